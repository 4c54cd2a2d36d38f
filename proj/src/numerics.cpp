#include "hecke/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "hecke/errors.hpp"

namespace hecke {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// B_{2k} / (2k)! for k = 1..13.
constexpr std::array<double, 13> kBernoulliOverFactorial = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0,
    657931.0 / 186134520519971831808000000.0};

constexpr int kBernoulliTerms = 12;

bool is_nonpositive_integer(Complex s) {
    return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

Complex log_gamma_right(Complex s) {
    // Re s >= 1/2.
    const Complex z = s - 1.0;
    Complex series = kLanczosCoef[0];
    for (std::size_t k = 1; k < kLanczosCoef.size(); ++k) {
        series += kLanczosCoef[k] / (z + static_cast<double>(k));
    }
    const Complex t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

// log sin(pi s) without overflow for large |Im s|.
Complex log_sin_pi(Complex s) {
    if (std::abs(s.imag()) < 10.0) {
        return std::log(std::sin(kPi * s));
    }
    const bool upper = s.imag() > 0.0;
    const Complex w = upper ? s : std::conj(s);
    const Complex i(0.0, 1.0);
    // sin(pi w) = e^{-i pi w} (e^{2 i pi w} - 1) / (2i)
    const Complex val = -i * kPi * w + std::log(std::exp(2.0 * i * kPi * w) - 1.0) - std::log(2.0 * i);
    return upper ? val : std::conj(val);
}

// Euler-Maclaurin sum for sum_{n >= 0} (n + a)^{-s} with n summed directly
// below `direct`. Returns value and a remainder bound.
struct EmResult {
    Complex value;
    double remainder;
};

EmResult euler_maclaurin(Complex s, double a, std::int64_t direct) {
    Complex head = 0.0;
    for (std::int64_t n = 0; n < direct; ++n) {
        head += std::exp(-s * std::log(static_cast<double>(n) + a));
    }
    const double big_n = static_cast<double>(direct) + a;
    const double log_n = std::log(big_n);
    const Complex n_pow = std::exp(-s * log_n);  // N^{-s}
    Complex tail = big_n * n_pow / (s - 1.0) + 0.5 * n_pow;
    // term_k = B_{2k}/(2k)! * s (s+1) ... (s+2k-2) * N^{-s-2k+1}
    Complex rising = s;  // s (s+1) ... (s+2k-2)
    Complex power = n_pow / big_n;
    for (int k = 1; k <= kBernoulliTerms; ++k) {
        tail += kBernoulliOverFactorial[k - 1] * rising * power;
        rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        power /= big_n * big_n;
    }
    // Remainder after K terms: |(s)_{2K+1} B_{2K+2}/(2K+2)!| N^{-sigma-2K-1} / (sigma + 2K + 1),
    // valid when sigma + 2K + 1 > 0; otherwise fall back to the next-term size times |s+2K+1|.
    const double sigma = s.real();
    const double denom = sigma + 2.0 * kBernoulliTerms + 1.0;
    const double next = std::abs(kBernoulliOverFactorial[kBernoulliTerms] * rising) *
                        std::exp(-(sigma + 2.0 * kBernoulliTerms + 1.0) * log_n);
    const double remainder =
        denom > 0.5 ? next * std::abs(s + 2.0 * kBernoulliTerms + 1.0) / denom
                    : next * std::abs(s + 2.0 * kBernoulliTerms + 1.0) * 2.0;
    return {head + tail, remainder};
}

Complex hurwitz_impl(Complex s, double a, double tol, const char* name) {
    if (s == Complex(1.0, 0.0)) {
        throw PoleError(std::string(name) + ": pole at s = 1");
    }
    if (!(a > 0.0)) {
        throw RangeError(std::string(name) + ": shift must be positive");
    }
    if (std::abs(s.imag()) > 2000.0) {
        throw RangeError(std::string(name) + ": |Im s| > 2000 is outside the Euler-Maclaurin regime");
    }
    const double threshold = std::max({20.0, 2.0 * std::abs(s.imag()), std::abs(s.real()) + 10.0});
    auto direct = static_cast<std::int64_t>(std::max(0.0, std::ceil(threshold - a)));
    constexpr std::int64_t kBudget = 4'000'000;
    while (true) {
        const EmResult r = euler_maclaurin(s, a, direct);
        const double scale = std::max(1.0, std::abs(r.value));
        if (r.remainder <= 1e-2 * tol * scale) {
            return require_finite(r.value, name);
        }
        if (direct >= kBudget) {
            throw AccuracyError(std::string(name) + ": tolerance not reached within truncation budget");
        }
        direct = std::max<std::int64_t>(2 * direct, 40);
    }
}

}  // namespace

Complex require_finite(Complex z, const char* what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw AccuracyError(std::string(what) + ": non-finite result");
    }
    return z;
}

Complex log_gamma(Complex s) {
    if (is_nonpositive_integer(s)) {
        throw PoleError("gamma: pole at non-positive integer");
    }
    if (s.real() < 0.5) {
        return std::log(kPi) - log_sin_pi(s) - log_gamma_right(1.0 - s);
    }
    return log_gamma_right(s);
}

Complex gamma(Complex s) {
    return require_finite(std::exp(log_gamma(s)), "gamma");
}

Complex log_gamma_R(Complex s) {
    return -0.5 * s * std::log(kPi) + log_gamma(0.5 * s);
}

Complex gamma_R(Complex s) {
    if (is_nonpositive_integer(0.5 * s)) {
        throw PoleError("gamma_R: pole");
    }
    return require_finite(std::exp(log_gamma_R(s)), "gamma_R");
}

Complex zeta(Complex s, double tol) {
    return hurwitz_impl(s, 1.0, tol, "zeta");
}

Complex hurwitz_zeta(Complex s, double a, double tol) {
    return hurwitz_impl(s, a, tol, "hurwitz_zeta");
}

double bessel_K_scaled_bound(Complex nu, double x) {
    const double t = std::abs(nu.imag());
    const double alpha = std::abs(nu.real());
    if (!(x > t)) {
        throw RangeError("bessel_K_scaled_bound: requires x > |Im nu|");
    }
    const double theta = std::asin(t / x);
    const double reduced = std::sqrt((x - t) * (x + t));
    const double log_bound = 0.5 * kPi * t - t * theta - reduced + alpha * alpha / (2.0 * reduced) +
                             0.5 * std::log(2.0 * kPi / reduced) - std::log(2.0);
    return std::exp(log_bound);
}

Complex bessel_K_scaled_complex(Complex nu, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw RangeError("bessel_K: argument must be positive");
    }
    // K_nu(x) = conj(K_{conj nu}(x)) for real x: work with Im nu >= 0.
    const bool flip = nu.imag() < 0.0;
    const Complex order = flip ? std::conj(nu) : nu;
    const double t = order.imag();
    const double alpha = order.real();
    const double scale_shift = 0.5 * kPi * t;
    const Complex i(0.0, 1.0);

    // Contour w(u) = u + i theta(u). Past the turning point a horizontal line
    // through the saddle asin(t / x) is used. Otherwise theta(u) = pi/2 - delta(u)
    // where delta vanishes between the two saddles at +-acosh(t / x) and rises
    // smoothly to delta_max outside them, which damps the tails while keeping
    // |integrand| = O(1) in the oscillatory middle.
    const bool horizontal = t == 0.0 || x >= t + 2.0 * std::cbrt(t) + 1.0;
    const double theta_line = t == 0.0 ? 0.0 : std::asin(std::min(1.0, t / x));
    const double u_saddle = horizontal ? 0.0 : std::acosh(std::max(1.0, t / x));
    const double delta_max = horizontal ? 0.0 : std::min(1.0, 2.0 * std::cbrt(3.0 / t));
    const double width = horizontal ? 0.5 : std::min(0.5, 2.0 * std::exp(1.0) / (delta_max * t));

    auto theta_and_slope = [&](double u) -> std::pair<double, double> {
        if (horizontal) {
            return {theta_line, 0.0};
        }
        const double tp = std::tanh((u - u_saddle) / width);
        const double tm = std::tanh((u + u_saddle) / width);
        const double sigma = 1.0 + 0.5 * (tp - tm);
        const double dsigma = 0.5 * ((1.0 - tp * tp) - (1.0 - tm * tm)) / width;
        return {0.5 * kPi - delta_max * sigma, -delta_max * dsigma};
    };
    auto exponent = [&](double u) {
        const auto [theta, slope] = theta_and_slope(u);
        (void)slope;
        const Complex w(u, theta);
        return -x * std::cosh(w) + order * w + scale_shift;
    };
    auto integrand = [&](double u) {
        const auto [theta, slope] = theta_and_slope(u);
        const Complex w(u, theta);
        return std::exp(-x * std::cosh(w) + order * w + scale_shift) * Complex(1.0, slope);
    };

    // Truncation: walk outward until the integrand is e^{-46} below the largest value seen.
    constexpr double kDrop = 46.0;
    double peak = exponent(0.0).real();
    auto edge = [&](double direction) {
        double u = 0.0;
        const double step = 0.05;
        while (true) {
            u += direction * step;
            const double r = exponent(u).real();
            peak = std::max(peak, r);
            if (r < peak - kDrop && std::abs(u) > u_saddle + 4.0 * width) {
                return u;
            }
            if (std::abs(u) > 60.0) {
                throw AccuracyError("bessel_K: integration range did not close");
            }
        }
    };
    const double u_hi = edge(1.0);
    const double u_lo = edge(-1.0);

    double max_freq = t + std::abs(alpha) + 1.0;
    for (double u : {u_lo, u_hi}) {
        max_freq = std::max(max_freq, std::abs(x * std::cosh(u) - t) + t);
    }
    double h = std::min(0.25, 2.0 / max_freq);
    auto nodes = static_cast<std::int64_t>(std::ceil((u_hi - u_lo) / h));
    h = (u_hi - u_lo) / static_cast<double>(nodes);
    Complex sum = 0.0;
    for (std::int64_t k = 0; k <= nodes; ++k) {
        sum += integrand(u_lo + h * static_cast<double>(k));
    }
    Complex estimate = 0.5 * h * sum;
    const double floor_scale = std::exp(peak - 7.0);
    for (int level = 0; level < 10; ++level) {
        Complex mids = 0.0;
        for (std::int64_t k = 0; k < nodes; ++k) {
            mids += integrand(u_lo + h * (static_cast<double>(k) + 0.5));
        }
        sum += mids;
        nodes *= 2;
        h *= 0.5;
        const Complex refined = 0.5 * h * sum;
        const double diff = std::abs(refined - estimate);
        estimate = refined;
        if (diff <= 1e-12 * std::max(std::abs(refined), floor_scale) || diff == 0.0) {
            const Complex value = flip ? std::conj(estimate) : estimate;
            return require_finite(value, "bessel_K");
        }
    }
    throw AccuracyError("bessel_K: trapezoid refinement did not converge");
}

double bessel_K_scaled(double t, double y) {
    if (t < 0.0 || t > 500.0 || !(y > 0.0) || y > 10.0 * (t + 50.0)) {
        throw RangeError("bessel_K_scaled: (t, y) outside 0 <= t <= 500, 0 < y <= 10 (t + 50)");
    }
    return bessel_K_scaled_complex(Complex(0.0, t), y).real();
}

Complex divisor_tau(Complex v, std::int64_t n) {
    if (n < 1) {
        throw DomainError("divisor_tau: n must be positive");
    }
    Complex sum = 0.0;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) {
            continue;
        }
        const std::int64_t a = n / d;
        const double log_ratio = std::log(static_cast<double>(a) / static_cast<double>(d));
        if (a == d) {
            sum += 1.0;
        } else {
            sum += 2.0 * std::cosh(v * log_ratio);
        }
    }
    return sum;
}

}  // namespace hecke
