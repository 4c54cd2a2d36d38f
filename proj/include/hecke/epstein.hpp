#pragma once

// Epstein zeta functions of binary positive definite forms: direct lattice
// summation, the approximate functional equation on the critical line, and
// the exponential sums sum e^{it log Q(x)} over boxes.

#include <cstdint>
#include <vector>

#include "hecke/numerics.hpp"

namespace hecke {

/// Gram matrix ((a, b), (b, c)); Q(m, n) = a m^2 + 2 b m n + c n^2.
/// The normalized shape used throughout has c = 1, a >= 1, |b| <= 1/2.
struct GramMatrix {
    double a = 1.0;
    double b = 0.0;
    double c = 1.0;

    double det() const { return a * c - b * b; }
    double operator()(double m, double n) const { return a * m * m + 2.0 * b * m * n + c * n * n; }
    bool normalized() const;

    /// Normalized ((a, b), (b, 1)); DomainError unless a >= 1, |b| <= 1/2.
    static GramMatrix make(double a, double b);
    /// Any positive definite matrix (for scaling identities).
    static GramMatrix general(double a, double b, double c);
};

/// sum over (m, n) != 0 of Q(m, n)^{-s}, Re s >= 1.25. Rows m with
/// 2 pi sqrt(det) |m| / c past a tol-dependent cut are replaced by their
/// Poisson main term sqrt(pi) Gamma(s - 1/2) / Gamma(s) kappa^{1 - 2s}, which
/// differs from the row sum by O(e^{-2 pi kappa}).
Complex epstein_direct(const GramMatrix& z, Complex s, double tol = kDefaultTol);

/// Gaussian weight used in the approximate functional equation.
/// G(u) = exp(u^2 / 4): the width is a free choice; this one decays fast
/// enough in y that the sums stop at about 40 |t| conductors.
Complex afe_weight_G(Complex u);

/// W_t^{+-}(y) = 1/(2 pi i) int_{(1)} Gamma_R(2(u + 1/2 +- it)) / Gamma_R(1 +- 2it)
///               G(u) y^{-u} du / u.
Complex weight_W(int sign, double t, double y, double tol = kDefaultTol);

/// Precomputed quadrature for W at fixed (sign, t): reuse across many y.
class WeightTable {
public:
    WeightTable(int sign, double t);
    Complex operator()(double y) const;

private:
    std::vector<Complex> weights_;  // step * gamma ratio * G / u / (2 pi) at each node
    std::vector<double> heights_;   // Im u at each node
};

struct AfeTerms {
    Complex plus_sum;
    Complex minus_sum;
    /// Gamma_R(1 - 2it) / (Gamma_R(1 + 2it) sqrt(det Z)).
    Complex gamma_ratio;
    Complex pole_terms;
    Complex total;
    std::int64_t plus_points = 0;
    std::int64_t minus_points = 0;
};

/// E_Epstein(Z, 1/2 + it) by the approximate functional equation with exact
/// pole terms. Z must be normalized. RangeError for |t| < 0.5 or |t| > 500.
AfeTerms epstein_afe(const GramMatrix& z, double t, double tol = 1e-8);

inline constexpr std::int64_t kMaxExpSumPoints = 100'000'000;

/// sum over integer points of [x1_lo, x1_hi] x [x2_lo, x2_hi] of
/// e^{it log Q(x)} (sign +) or e^{it log(det Z Q^{-1}(x))} (sign -).
/// ResourceError above kMaxExpSumPoints points.
Complex exp_sum(const GramMatrix& z, double t, double x1_lo, double x1_hi, double x2_lo, double x2_hi, int sign);

/// Number of integer points in the box (as used by exp_sum).
std::int64_t box_point_count(double x1_lo, double x1_hi, double x2_lo, double x2_hi);

}  // namespace hecke
