#include "hecke/epstein.hpp"

#include <cmath>
#include <string>

#include "hecke/errors.hpp"

namespace hecke {
namespace {

// One-sided row sum sum_{n >= 0} ((n + g)^2 + k2)^{-s}, g in [0, 1], k2 > 0.
// Direct terms up to N, then the binomial expansion of the tail in Hurwitz
// zeta values, convergent since k2 / (N + g)^2 <= 1/4.
Complex half_row(Complex s, double g, double k2, double tol) {
    const auto n_direct = static_cast<std::int64_t>(std::ceil(2.0 * std::sqrt(k2))) + 8;
    Complex sum = 0.0;
    for (std::int64_t n = 0; n < n_direct; ++n) {
        const double x = static_cast<double>(n) + g;
        sum += std::exp(-s * std::log(x * x + k2));
    }
    const double shift = static_cast<double>(n_direct) + g;
    const double q = k2 / (shift * shift);
    Complex binom = 1.0;
    Complex k2_pow = 1.0;
    for (int k = 0; k < 400; ++k) {
        const Complex term = binom * k2_pow * hurwitz_zeta(2.0 * s + 2.0 * k, shift, 1e-3 * tol);
        sum += term;
        // Next term is smaller by about |(s + k) / (k + 1)| q.
        if (std::abs(term) < 1e-3 * tol && std::abs(binom) * std::pow(q, k) < 1e-3 * tol) {
            return sum;
        }
        binom *= (-s - static_cast<double>(k)) / static_cast<double>(k + 1);
        k2_pow *= k2;
    }
    throw AccuracyError("epstein_direct: row tail expansion did not converge");
}

// Enumerates (m, n) != 0 in the half plane n > 0 or (n = 0, m > 0) with
// A m^2 + 2 B m n + C n^2 <= R, calling f(Q) for each.
template <class F>
std::int64_t for_each_half_lattice(double A, double B, double C, double R, F&& f) {
    const double det = A * C - B * B;
    const auto n_max = static_cast<std::int64_t>(std::floor(std::sqrt(R * A / det)));
    std::int64_t count = 0;
    for (std::int64_t n = 0; n <= n_max; ++n) {
        const double nd = static_cast<double>(n);
        const double disc = A * R - det * nd * nd;
        if (disc < 0.0) {
            continue;
        }
        const double root = std::sqrt(disc);
        auto m_lo = static_cast<std::int64_t>(std::ceil((-B * nd - root) / A));
        const auto m_hi = static_cast<std::int64_t>(std::floor((-B * nd + root) / A));
        if (n == 0) {
            m_lo = 1;
        }
        for (std::int64_t m = m_lo; m <= m_hi; ++m) {
            const double md = static_cast<double>(m);
            const double Q = A * md * md + 2.0 * B * md * nd + C * nd * nd;
            if (Q <= R) {
                f(Q);
                ++count;
            }
        }
    }
    return count;
}

// Smallest cut Y such that the lattice tail beyond y > Y is negligible:
// sum over points of Q^{-1/2} |W(Q / X)| with pi / sqrt(det) points per unit Q
// is bounded by integrating the sampled |W| on a geometric grid.
double weight_cutoff(const WeightTable& w, double t, double density, double scale, double tol) {
    const double kappa = std::abs(t) / kPi + 1.0;
    std::vector<double> ys;
    std::vector<double> mags;
    for (double y = kappa; ys.size() < 2000; y *= 1.1) {
        ys.push_back(y);
        mags.push_back(std::abs(w(y)));
        if (mags.back() < 1e-40 && ys.size() > 10) {
            break;
        }
    }
    double tail = 0.0;
    double cut = ys.back();
    for (std::size_t j = ys.size() - 1; j-- > 0;) {
        // contribution of Q in [y_j X, y_{j+1} X].
        tail += density * scale * std::sqrt(ys[j] * scale) / (ys[j] * scale) * mags[j] * (ys[j + 1] - ys[j]);
        if (tail > 1e-2 * tol) {
            break;
        }
        cut = ys[j];
    }
    return cut;
}

}  // namespace

bool GramMatrix::normalized() const {
    return c == 1.0 && a >= 1.0 && std::abs(b) <= 0.5;
}

GramMatrix GramMatrix::make(double a, double b) {
    if (!(a >= 1.0) || !(std::abs(b) <= 0.5) || !std::isfinite(a)) {
        throw DomainError("GramMatrix: need a >= 1 and |b| <= 1/2");
    }
    return {a, b, 1.0};
}

GramMatrix GramMatrix::general(double a, double b, double c) {
    if (!(a > 0.0) || !(c > 0.0) || !(a * c - b * b > 0.0) || !std::isfinite(a) || !std::isfinite(b) ||
        !std::isfinite(c)) {
        throw DomainError("GramMatrix: not positive definite");
    }
    return {a, b, c};
}

Complex epstein_direct(const GramMatrix& z, Complex s, double tol) {
    require_finite(s, "epstein_direct: s");
    if (s.real() < 1.25) {
        throw ConvergenceError("epstein_direct: the lattice sum needs Re s >= 1.25");
    }
    // Q = c (n + beta m)^2 + (det / c) m^2.
    const double det = z.det();
    const double beta = z.b / z.c;
    const double kappa_unit = std::sqrt(det) / z.c;
    const Complex c_pow = std::exp(-s * std::log(z.c));
    // Rows with 2 pi kappa >= cut carry Poisson corrections below tol.
    const double cut = std::log(1.0 / tol) + 30.0 + 3.0 * s.real() + std::log1p(std::abs(s));
    const auto m_max = static_cast<std::int64_t>(std::ceil(cut / (2.0 * kPi * kappa_unit)));
    if (m_max > 1'000'000) {
        throw AccuracyError("epstein_direct: too many direct rows for this matrix");
    }
    Complex total = 2.0 * zeta(2.0 * s, 1e-3 * tol);
    for (std::int64_t m = 1; m <= m_max; ++m) {
        const double shift = beta * static_cast<double>(m);
        const double frac = shift - std::floor(shift);
        const double kappa = kappa_unit * static_cast<double>(m);
        const double k2 = kappa * kappa;
        total += 2.0 * (half_row(s, frac, k2, tol) + half_row(s, 1.0 - frac, k2, tol));
    }
    const Complex main_coeff = std::sqrt(kPi) * std::exp(log_gamma(s - 0.5) - log_gamma(s));
    const Complex tail = 2.0 * main_coeff * std::exp((1.0 - 2.0 * s) * std::log(kappa_unit)) *
                         hurwitz_zeta(2.0 * s - 1.0, static_cast<double>(m_max + 1), 1e-3 * tol);
    total += tail;
    return require_finite(c_pow * total, "epstein_direct");
}

Complex afe_weight_G(Complex u) {
    return std::exp(0.25 * u * u);
}

WeightTable::WeightTable(int sign, double t) {
    if (sign != 1 && sign != -1) {
        throw DomainError("weight_W: sign must be +1 or -1");
    }
    if (std::abs(t) > 500.0) {
        throw RangeError("weight_W: |t| <= 500 required");
    }
    constexpr double kRe = 1.0;
    constexpr double kHalfWidth = 20.0;
    constexpr double kStep = 0.02;
    const Complex s(0.5, sign * t);
    const Complex log_base = log_gamma_R(2.0 * s);
    const auto nodes = static_cast<int>(std::lround(2.0 * kHalfWidth / kStep));
    weights_.reserve(static_cast<std::size_t>(nodes + 1));
    heights_.reserve(static_cast<std::size_t>(nodes + 1));
    for (int k = 0; k <= nodes; ++k) {
        const double v = -kHalfWidth + kStep * k;
        const Complex u(kRe, v);
        const Complex ratio = std::exp(log_gamma_R(2.0 * (u + s)) - log_base);
        weights_.push_back(kStep / (2.0 * kPi) * ratio * afe_weight_G(u) / u);
        heights_.push_back(v);
    }
}

Complex WeightTable::operator()(double y) const {
    if (!(y > 0.0)) {
        throw DomainError("weight_W: y must be positive");
    }
    // y^{-u} = y^{-1} e^{-i v log y}, stepped through the uniform nodes.
    const double L = std::log(y);
    const double step = heights_.size() > 1 ? heights_[1] - heights_[0] : 0.0;
    const Complex rotate = std::polar(1.0, -step * L);
    Complex phase = std::polar(1.0, -heights_.front() * L);
    Complex sum = 0.0;
    for (std::size_t k = 0; k < weights_.size(); ++k) {
        sum += weights_[k] * phase;
        phase *= rotate;
        if ((k & 255) == 255) {
            phase = std::polar(1.0, -heights_[k + 1 < heights_.size() ? k + 1 : k] * L);
        }
    }
    return sum / y;
}

Complex weight_W(int sign, double t, double y, double tol) {
    (void)tol;  // the fixed quadrature is accurate to ~1e-13 relative to y^{-1}
    return WeightTable(sign, t)(y);
}

AfeTerms epstein_afe(const GramMatrix& z, double t, double tol) {
    if (!z.normalized()) {
        throw DomainError("epstein_afe: Gram matrix must be normalized (a >= 1, |b| <= 1/2, c = 1)");
    }
    if (std::abs(t) < 0.5 || std::abs(t) > 500.0 || !std::isfinite(t)) {
        throw RangeError("epstein_afe: need 0.5 <= |t| <= 500");
    }
    const Complex s(0.5, t);
    const double det = z.det();
    const double X = std::sqrt(z.a);
    const WeightTable w_plus(1, t);
    const WeightTable w_minus(-1, t);

    AfeTerms out;
    // Plus side: Q_+ = Q, y = Q / X, pi / sqrt(det) points per unit Q.
    const double y_plus = weight_cutoff(w_plus, t, kPi / std::sqrt(det), X, tol);
    Complex plus = 0.0;
    out.plus_points = 2 * for_each_half_lattice(z.a, z.b, z.c, y_plus * X, [&](double q) {
        plus += std::exp(-s * std::log(q)) * w_plus(q / X);
    });
    out.plus_sum = 2.0 * plus;

    // Minus side: Q_- = x Z^{-1} x^T, y = Q_- X, pi sqrt(det) points per unit Q_-.
    const double y_minus = weight_cutoff(w_minus, t, kPi * std::sqrt(det), 1.0 / X, tol);
    const Complex s_dual = 1.0 - s;
    Complex minus = 0.0;
    out.minus_points = 2 * for_each_half_lattice(z.c / det, -z.b / det, z.a / det, y_minus / X, [&](double q) {
        minus += std::exp(-s_dual * std::log(q)) * w_minus(q * X);
    });
    out.minus_sum = 2.0 * minus;

    out.gamma_ratio = std::exp(log_gamma_R(2.0 * s_dual) - log_gamma_R(2.0 * s)) / std::sqrt(det);
    // Residues of Gamma_R(2w) E(Z, w) G(w - s) X^{w - s} / (w - s) at w = 1 and w = 0.
    const Complex r1 = afe_weight_G(s_dual) * std::exp(s_dual * std::log(X)) / (s_dual * std::sqrt(det));
    const Complex r0 = afe_weight_G(-s) * std::exp(-s * std::log(X)) / s;
    out.pole_terms = -(r1 + r0) * std::exp(-log_gamma_R(2.0 * s));
    out.total = out.plus_sum + out.gamma_ratio * out.minus_sum + out.pole_terms;
    require_finite(out.total, "epstein_afe");
    return out;
}

std::int64_t box_point_count(double x1_lo, double x1_hi, double x2_lo, double x2_hi) {
    const double n1 = std::floor(x1_hi) - std::ceil(x1_lo) + 1.0;
    const double n2 = std::floor(x2_hi) - std::ceil(x2_lo) + 1.0;
    if (n1 <= 0.0 || n2 <= 0.0) {
        return 0;
    }
    const double total = n1 * n2;
    return total > 9e18 ? INT64_MAX : static_cast<std::int64_t>(total);
}

Complex exp_sum(const GramMatrix& z, double t, double x1_lo, double x1_hi, double x2_lo, double x2_hi, int sign) {
    if (sign != 1 && sign != -1) {
        throw DomainError("exp_sum: sign must be +1 or -1");
    }
    if (!(x1_lo > 0.0 && x2_lo > 0.0 && x1_lo <= x1_hi && x2_lo <= x2_hi)) {
        throw DomainError("exp_sum: need 0 < X_i <= X_i'");
    }
    const std::int64_t count = box_point_count(x1_lo, x1_hi, x2_lo, x2_hi);
    if (count > kMaxExpSumPoints) {
        throw ResourceError("exp_sum: " + std::to_string(count) + " points exceed the cap");
    }
    // sign -: det(Z) Q^{-1}(x) = c x1^2 - 2 b x1 x2 + a x2^2.
    const double A = sign == 1 ? z.a : z.c;
    const double B = sign == 1 ? z.b : -z.b;
    const double C = sign == 1 ? z.c : z.a;
    const auto m_lo = static_cast<std::int64_t>(std::ceil(x1_lo));
    const auto m_hi = static_cast<std::int64_t>(std::floor(x1_hi));
    const auto n_lo = static_cast<std::int64_t>(std::ceil(x2_lo));
    const auto n_hi = static_cast<std::int64_t>(std::floor(x2_hi));
    Complex total = 0.0;
    for (std::int64_t m = m_lo; m <= m_hi; ++m) {
        const double md = static_cast<double>(m);
        double re = 0.0, im = 0.0;
        for (std::int64_t n = n_lo; n <= n_hi; ++n) {
            const double nd = static_cast<double>(n);
            const double phase = t * std::log(A * md * md + 2.0 * B * md * nd + C * nd * nd);
            re += std::cos(phase);
            im += std::sin(phase);
        }
        total += Complex(re, im);
    }
    return total;
}

}  // namespace hecke
