#pragma once

// Small integer arithmetic shared by the class-group and L-function code.

#include <cstdint>
#include <vector>

namespace hecke {

std::int64_t floor_sqrt(std::int64_t n);
bool is_square(std::int64_t n);
bool is_squarefree(std::int64_t n);

/// Nonnegative remainder.
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// D = 0, 1 (mod 4), D != 0, and D is the discriminant of a quadratic field.
bool is_fundamental_discriminant(std::int64_t d);

/// Kronecker symbol (d / n) for any integer n, extended to n <= 0 and even n
/// in the standard way. Completely multiplicative in n.
int kronecker_chi(std::int64_t d, std::int64_t n);

/// Primes <= limit by the sieve of Eratosthenes.
std::vector<std::int64_t> primes_up_to(std::int64_t limit);

/// Smallest prime factor table for 0..limit (entries 0 and 1 are 0).
std::vector<std::int32_t> smallest_prime_factors(std::int64_t limit);

/// Some b in [0, 2p) with b^2 = d (mod 4p) for a prime p, or -1 if none exists.
std::int64_t sqrt_disc_mod_4p(std::int64_t d, std::int64_t p);

}  // namespace hecke
