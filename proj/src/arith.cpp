#include "hecke/arith.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

namespace hecke {
namespace {

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m) {
    std::int64_t result = 1 % m;
    base = mod_floor(base, m);
    while (exp > 0) {
        if (exp & 1) {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Tonelli-Shanks; p odd prime, n a quadratic residue mod p.
std::int64_t sqrt_mod_prime(std::int64_t n, std::int64_t p) {
    n = mod_floor(n, p);
    if (n == 0) {
        return 0;
    }
    if (p % 4 == 3) {
        return pow_mod(n, (p + 1) / 4, p);
    }
    std::int64_t q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    std::int64_t z = 2;
    while (pow_mod(z, (p - 1) / 2, p) != p - 1) {
        ++z;
    }
    std::int64_t m = s;
    std::int64_t c = pow_mod(z, q, p);
    std::int64_t t = pow_mod(n, q, p);
    std::int64_t r = pow_mod(n, (q + 1) / 2, p);
    while (t != 1) {
        std::int64_t i = 0;
        std::int64_t tt = t;
        while (tt != 1) {
            tt = mul_mod(tt, tt, p);
            ++i;
        }
        std::int64_t b = c;
        for (std::int64_t j = 0; j < m - i - 1; ++j) {
            b = mul_mod(b, b, p);
        }
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    return r;
}

}  // namespace

std::int64_t floor_sqrt(std::int64_t n) {
    if (n <= 0) {
        return 0;
    }
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) {
        --r;
    }
    while ((r + 1) * (r + 1) <= n) {
        ++r;
    }
    return r;
}

bool is_square(std::int64_t n) {
    if (n < 0) {
        return false;
    }
    const std::int64_t r = floor_sqrt(n);
    return r * r == n;
}

bool is_squarefree(std::int64_t n) {
    n = std::llabs(n);
    if (n == 0) {
        return false;
    }
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) {
                return false;
            }
        }
    }
    return true;
}

bool is_fundamental_discriminant(std::int64_t d) {
    if (d == 0 || d == 1) {
        return false;
    }
    const std::int64_t r = mod_floor(d, 4);
    if (r == 1) {
        return is_squarefree(d);
    }
    if (r == 0) {
        const std::int64_t m = d / 4;
        const std::int64_t mr = mod_floor(m, 4);
        return (mr == 2 || mr == 3) && is_squarefree(m);
    }
    return false;
}

int kronecker_chi(std::int64_t d, std::int64_t n) {
    if (n == 0) {
        return std::llabs(d) == 1 ? 1 : 0;
    }
    int result = 1;
    if (n < 0) {
        n = -n;
        if (d < 0) {
            result = -result;
        }
    }
    // Factor 2 out of n.
    int twos = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++twos;
    }
    if (twos > 0) {
        if (d % 2 == 0) {
            return 0;
        }
        const std::int64_t r8 = mod_floor(d, 8);
        if ((twos & 1) && (r8 == 3 || r8 == 5)) {
            result = -result;
        }
    }
    // Jacobi symbol (d / n) for odd positive n.
    std::int64_t a = mod_floor(d, n);
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const std::int64_t r = n % 8;
            if (r == 3 || r == 5) {
                result = -result;
            }
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) {
            result = -result;
        }
        a %= n;
    }
    return n == 1 ? result : 0;
}

std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
    std::vector<std::int64_t> primes;
    if (limit < 2) {
        return primes;
    }
    std::vector<bool> composite(static_cast<std::size_t>(limit + 1), false);
    for (std::int64_t p = 2; p <= limit; ++p) {
        if (composite[static_cast<std::size_t>(p)]) {
            continue;
        }
        primes.push_back(p);
        for (std::int64_t q = p * p; q <= limit; q += p) {
            composite[static_cast<std::size_t>(q)] = true;
        }
    }
    return primes;
}

std::vector<std::int32_t> smallest_prime_factors(std::int64_t limit) {
    std::vector<std::int32_t> spf(static_cast<std::size_t>(limit + 1), 0);
    for (std::int64_t p = 2; p <= limit; ++p) {
        if (spf[static_cast<std::size_t>(p)] != 0) {
            continue;
        }
        for (std::int64_t q = p; q <= limit; q += p) {
            if (spf[static_cast<std::size_t>(q)] == 0) {
                spf[static_cast<std::size_t>(q)] = static_cast<std::int32_t>(p);
            }
        }
    }
    return spf;
}

std::int64_t sqrt_disc_mod_4p(std::int64_t d, std::int64_t p) {
    const std::int64_t m = 4 * p;
    if (p == 2) {
        for (std::int64_t b = 0; b < 4; ++b) {
            if (mod_floor(b * b - d, m) == 0) {
                return b;
            }
        }
        return -1;
    }
    if (kronecker_chi(d, p) == -1) {
        return -1;
    }
    std::int64_t r = sqrt_mod_prime(d, p);
    // Match parity with d so that b^2 = d (mod 4) as well.
    if ((r - d) % 2 != 0) {
        r = p - r;
    }
    if (r == p && d % 2 == 0) {
        r = 0;
    }
    return mod_floor(r, 2 * p);
}

}  // namespace hecke
