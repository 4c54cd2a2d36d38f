#pragma once

// Complex special functions: Gamma, Gamma_R, Riemann and Hurwitz zeta,
// K-Bessel functions of complex order, and twisted divisor sums.

#include <complex>
#include <cstdint>

namespace hecke {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kDefaultTol = 1e-10;

/// Throws AccuracyError naming `what` if either component is NaN or infinite.
Complex require_finite(Complex z, const char* what);

/// log Gamma(s) on some branch; only exp() of it and differences are meaningful.
/// Lanczos approximation (g = 7, 9 terms) with reflection for Re s < 1/2.
Complex log_gamma(Complex s);

/// Gamma(s). Throws PoleError at non-positive integers.
Complex gamma(Complex s);

/// Gamma_R(s) = pi^{-s/2} Gamma(s/2).
Complex gamma_R(Complex s);

/// log Gamma_R(s), same branch caveat as log_gamma.
Complex log_gamma_R(Complex s);

/// Riemann zeta by Euler-Maclaurin summation, absolute error <= tol.
/// Throws PoleError at s = 1, RangeError for |Im s| > 2000, AccuracyError if
/// the truncation budget is exhausted.
Complex zeta(Complex s, double tol = kDefaultTol);

/// Hurwitz zeta sum_{n >= 0} (n + a)^{-s}, continued in s. Accepts any a > 0
/// (the shift a in (0, 1] is the classical case; larger shifts are used for
/// tail sums of lattice series).
Complex hurwitz_zeta(Complex s, double a, double tol = kDefaultTol);

/// e^{pi t / 2} K_{it}(y), a real number. Envelope: 0 <= t <= 500,
/// 0 < y <= 10 (t + 50); outside it throws RangeError.
double bessel_K_scaled(double t, double y);

/// e^{pi |Im nu| / 2} K_nu(x) for complex order nu and x > 0.
///
/// Evaluated from K_nu(x) = 1/2 int_R exp(-x cosh w + nu w) dw on a deformed
/// contour: past the turning point (x > |Im nu|) the horizontal line through
/// the saddle asin(|Im nu| / x); before it a curve that hugs Im w = pi/2
/// between the two real saddles and bends down outside them. Either way the
/// e^{-pi |Im nu| / 2} decay is carried by the integrand, so no cancellation
/// between O(1) contributions occurs. Trapezoid rule, halved until two
/// successive estimates agree to about 1e-12.
Complex bessel_K_scaled_complex(Complex nu, double x);

/// Rigorous upper bound for |e^{pi |Im nu| / 2} K_nu(x)|, valid when x > |Im nu|.
double bessel_K_scaled_bound(Complex nu, double x);

/// tau_v(n) = sum_{a d = n} (a / d)^v.
Complex divisor_tau(Complex v, std::int64_t n);

}  // namespace hecke
