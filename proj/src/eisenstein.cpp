#include "hecke/eisenstein.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hecke/errors.hpp"

namespace hecke {
namespace {

constexpr double kMinReducedHeight = 0.8660254037844386 - 1e-6;
constexpr std::int64_t kMaxTerms = 1'000'000;

void check_envelope(Complex s) {
    require_finite(s, "eisenstein: s");
    if (s.real() < 0.4 || s.real() > 5.0 || std::abs(s.imag()) > 500.0) {
        throw RangeError("eisenstein: s outside 0.4 <= Re s <= 5, |Im s| <= 500");
    }
    if (std::abs(s - 1.0) < 0.05) {
        throw PoleError("eisenstein: s within 0.05 of the pole at s = 1");
    }
}

// 8 sqrt(y) pi^s e^{-pi |t| / 2} / (Gamma(s) zeta(2s)); the e^{-pi |t| / 2}
// is undone by the rescaled Bessel factor.
Complex coefficient_prefactor(Complex s, double y) {
    if (std::abs(2.0 * s - 1.0) < 1e-12) {
        return 0.0;  // 1 / zeta(2s) vanishes at s = 1/2
    }
    const Complex log_pref = s * std::log(kPi) - 0.5 * kPi * std::abs(s.imag()) - log_gamma(s);
    return 8.0 * std::sqrt(y) * std::exp(log_pref) / zeta(2.0 * s, 1e-15);
}

struct Truncation {
    std::int64_t n_terms = 0;
    double tail = 0.0;
};

// Bound on |n-th term|: |tau_nu(n)| <= d(n) n^{|Re nu|} <= 2 n^{1/2 + |Re nu|}.
double term_bound(double pref_abs, Complex nu, double y, std::int64_t n) {
    const double nd = static_cast<double>(n);
    return pref_abs * 2.0 * std::pow(nd, 0.5 + std::abs(nu.real())) * bessel_K_scaled_bound(nu, 2.0 * kPi * nd * y);
}

// Smallest N whose tail sum_{n > N} is below tol, with the tail bound itself.
// Terms are only bounded once 2 pi n y > |t| + 1 (past the Bessel turning
// point); earlier terms are always kept.
Truncation truncate(double pref_abs, Complex nu, double y, double tol) {
    const double t = std::abs(nu.imag());
    const auto first = static_cast<std::int64_t>(std::floor((t + 1.0) / (2.0 * kPi * y))) + 1;
    std::vector<double> bounds;
    double previous = 0.0;
    double geometric_tail = 0.0;
    for (std::int64_t n = first; n < first + kMaxTerms; ++n) {
        const double b = term_bound(pref_abs, nu, y, n);
        bounds.push_back(b);
        if (n > first) {
            const double ratio = b / previous;
            if (ratio < 0.5 && b < 1e-3 * tol) {
                geometric_tail = b * ratio / (1.0 - ratio);
                break;
            }
        }
        previous = b;
    }
    if (bounds.empty() || (geometric_tail == 0.0 && bounds.back() >= 1e-3 * tol)) {
        throw AccuracyError("eisenstein: Fourier tail did not decay within the term budget");
    }
    // suffix[k] = bound on sum_{n >= first + k}.
    double suffix = geometric_tail;
    Truncation out{static_cast<std::int64_t>(bounds.size()) + first - 1, geometric_tail};
    for (std::size_t k = bounds.size(); k-- > 0;) {
        suffix += bounds[k];
        if (suffix >= tol) {
            break;
        }
        out.n_terms = first + static_cast<std::int64_t>(k) - 1;
        out.tail = suffix;
    }
    return out;
}

}  // namespace

Complex scattering_phi(Complex s) {
    require_finite(s, "scattering_phi: s");
    if (std::abs(s - 1.0) < 1e-12) {
        throw PoleError("scattering_phi: pole at s = 1");
    }
    if (std::abs(s - 0.5) < 1e-9) {
        return -1.0;
    }
    const Complex log_ratio = log_gamma_R(2.0 * s - 1.0) - log_gamma_R(2.0 * s);
    return std::exp(log_ratio) * zeta(2.0 * s - 1.0, 1e-15) / zeta(2.0 * s, 1e-15);
}

std::int64_t truncation_length(double y, double t, double tol) {
    const Complex s(0.5, t);
    const double pref_abs = std::abs(coefficient_prefactor(s, y));
    return truncate(pref_abs, s - 0.5, y, tol).n_terms;
}

Complex EisensteinRow::at(double x) const { return constant + fourier_part(x); }

Complex EisensteinRow::fourier_part(double x) const {
    Complex sum = 0.0;
    const double w = 2.0 * kPi * x;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        sum += coeffs[k] * std::cos(w * static_cast<double>(k + 1));
    }
    return sum;
}

EisensteinRow eisenstein_row(double y, Complex s, double tol, std::int64_t min_terms) {
    check_envelope(s);
    if (!(y >= kMinReducedHeight) || !std::isfinite(y)) {
        throw RangeError("eisenstein_row: y = " + std::to_string(y) + " below the fundamental domain");
    }
    EisensteinRow row;
    row.s = s;
    row.y = y;
    row.constant = 2.0 * std::exp(s * std::log(y)) + 2.0 * scattering_phi(s) * std::exp((1.0 - s) * std::log(y));
    const Complex nu = s - 0.5;
    const Complex pref = coefficient_prefactor(s, y);
    const Truncation trunc = truncate(std::abs(pref), nu, y, tol);
    row.tail_bound = trunc.tail;
    const std::int64_t n_terms = std::max(trunc.n_terms, min_terms);
    row.coeffs.reserve(static_cast<std::size_t>(n_terms));
    for (std::int64_t n = 1; n <= n_terms; ++n) {
        const double arg = 2.0 * kPi * static_cast<double>(n) * y;
        row.coeffs.push_back(pref * divisor_tau(nu, n) * bessel_K_scaled_complex(nu, arg));
    }
    return row;
}

EisensteinValue eisenstein(const HalfPlanePoint& z, Complex s, double tol) {
    check_envelope(s);
    const HalfPlanePoint w = reduce_to_fundamental(z).first;
    const EisensteinRow row = eisenstein_row(w.y, s, tol);
    EisensteinValue out;
    out.z = z;
    out.s = s;
    out.value = require_finite(row.at(w.x), "eisenstein");
    out.tail_bound = row.tail_bound;
    return out;
}

}  // namespace hecke
