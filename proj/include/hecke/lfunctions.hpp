#pragma once

// L-functions of class group characters of quadratic fields, evaluated by
// Hecke's Eisenstein-series formulas and by independent Dirichlet-series
// routes, plus quadratic Dirichlet L-functions.

#include <cstdint>

#include "hecke/arith.hpp"
#include "hecke/numerics.hpp"
#include "hecke/quadforms.hpp"

namespace hecke {

enum class LRoute { hecke, direct, genus };

const char* to_string(LRoute route);

struct LValue {
    Discriminant D;
    int char_index = 0;
    Complex s;
    Complex value;
    LRoute route = LRoute::direct;
};

/// L(s, chi_d) for a fundamental discriminant d (d = 1 gives zeta) from the
/// Hurwitz decomposition q^{-s} sum_r chi(r) zeta(s, r/q). At s = 1 the
/// digamma form -1/q sum_r chi(r) psi(r/q) is used instead.
Complex dirichlet_L(std::int64_t d, Complex s, double tol = kDefaultTol);

/// Ground-truth L_K(s, chi), Re s >= 1.25. For D < 0 this is
/// sum_a chi(a) (1/omega) sum' Q_a(x)^{-s} with lattice sums from
/// epstein_direct. For D > 0 it is the ideal-norm series
/// zeta(2s) sum_n n^{-s} sum_{primitive ideals of norm n} chi, built
/// multiplicatively from a prime sieve, plus the residue tail.
LValue lk_direct(const Discriminant& D, int char_index, Complex s, double tol = 1e-10);

/// The ideal-norm series route alone (either sign of D).
Complex lk_ideal_series(const ClassGroupData& data, int char_index, Complex s, double tol = 1e-10);

/// prod_{p <= prime_limit} over prime ideals of (1 - chi(P) N(P)^{-s})^{-1}.
Complex lk_euler_product(const ClassGroupData& data, int char_index, Complex s, std::int64_t prime_limit);

/// Powers of two fixed by comparing the Hecke formulas with lk_direct at
/// s = 2 (see pin_hecke_imag / pin_hecke_real). The imaginary one absorbs E
/// being twice the usual Eisenstein series; the real one needs no correction
/// once the class geodesic has length 2 log eps_K.
inline constexpr int kHeckeImagPowerOfTwo = -1;
inline constexpr int kHeckeRealPowerOfTwo = 0;

/// 2^{s+1+k} zeta(2s) |D|^{-s/2} / omega sum_a chi(a) E(z_a, s), D < 0.
LValue lk_hecke_imag(const Discriminant& D, int char_index, Complex s, double tol = 1e-10);

/// 2^k zeta(2s) D^{-s/2} Gamma(s) / Gamma(s/2)^2 sum_a chi(a) int_{C_a} E(z, s) ds,
/// D > 0, where C_a is the class geodesic of length 2 log eps_K. The integral
/// runs over one automorph period in arc length (trapezoid rule, exact for
/// periodic integrands up to spectral error) and is scaled by period_weight.
LValue lk_hecke_real(const Discriminant& D, int char_index, Complex s, double tol = 1e-10);

/// lk_hecke_imag or lk_hecke_real by the sign of D.
LValue lk_hecke(const Discriminant& D, int char_index, Complex s, double tol = 1e-10);

/// Outcome of fixing the prefactor convention against lk_direct at s = 2.
struct HeckePinning {
    int power_of_two = 0;
    /// Whether pairing E(z_a) with conj chi fits better than with chi; false
    /// when the two are indistinguishable (they always are: z_{a^{-1}} is the
    /// mirror image of z_a and E is even in x).
    bool conjugate_labels = false;
    bool labels_distinguishable = false;
    double residual = 0.0;
};

/// Tries k in {-1, 0, 1} and both labelings on D = -23 at s = 2.
HeckePinning pin_hecke_imag();
/// Same for the real-quadratic formula on D = 5 and D = 21 at s = 2.
HeckePinning pin_hecke_real();

struct GenusCheck {
    Complex lhs;
    Complex rhs;
    int char_index = 0;
};

/// lhs = L_K(s, chi) for the real character chi that factors as
/// L(s, chi_d1) L(s, chi_d2); rhs = that product. DomainError when d1, d2 are
/// not fundamental with d1 d2 = D or no real character matches at s = 2.
GenusCheck genus_check(const Discriminant& D, std::int64_t d1, std::int64_t d2, Complex s, double tol = 1e-10);

struct SecondMoment {
    double orthogonality_route = 0.0;
    double direct_route = 0.0;
};

/// sum_chi |L_K(1/2 + it, chi)|^2 two ways: directly, and as
/// 2^{3+2k} h |zeta(1 + 2it)|^2 / (omega^2 |D|^{1/2}) sum_a |E(z_a, 1/2 + it)|^2.
/// PoleError at t = 0.
SecondMoment second_moment(const Discriminant& D, double t, double tol = 1e-10);

}  // namespace hecke
