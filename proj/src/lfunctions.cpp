#include "hecke/lfunctions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/digamma.hpp>

#include "hecke/eisenstein.hpp"
#include "hecke/epstein.hpp"
#include "hecke/errors.hpp"

namespace hecke {
namespace {

constexpr std::int64_t kMaxIdealSeriesTerms = 20'000'000;
constexpr int kMaxCycleNodes = 1 << 14;

const ClassGroupData& group_of(const Discriminant& D, std::shared_ptr<const ClassGroupData>& holder) {
    if (!D.fundamental) {
        throw DomainError("class group L-functions need a fundamental discriminant, got " + std::to_string(D.D));
    }
    holder = class_group_shared(D);
    return *holder;
}

void check_char(const ClassGroupData& data, int chi) {
    if (chi < 0 || chi >= static_cast<int>(data.characters.size())) {
        throw DomainError("character index " + std::to_string(chi) + " out of range for D = " +
                          std::to_string(data.D.D));
    }
}

Complex pow2(Complex e) { return std::exp(e * std::log(2.0)); }

// Per-prime data for the ideal-norm series: the class of a prime ideal above p
// (split or ramified), or -1 for inert p.
struct PrimeTable {
    std::vector<std::int32_t> spf;
    std::vector<std::int32_t> prime_class;  // indexed by p
    std::vector<std::int8_t> kind;          // kronecker(D, p)
};

PrimeTable prime_table(const ClassGroupData& data, std::int64_t limit) {
    PrimeTable table;
    table.spf = smallest_prime_factors(limit);
    table.prime_class.assign(static_cast<std::size_t>(limit + 1), -1);
    table.kind.assign(static_cast<std::size_t>(limit + 1), 0);
    const std::int64_t D = data.D.D;
    for (std::int64_t p = 2; p <= limit; ++p) {
        if (table.spf[static_cast<std::size_t>(p)] != p) {
            continue;
        }
        const int k = kronecker_chi(D, p);
        table.kind[static_cast<std::size_t>(p)] = static_cast<std::int8_t>(k);
        if (k == -1) {
            continue;
        }
        const std::int64_t b = sqrt_disc_mod_4p(D, p);
        const QuadraticForm f{p, b, (b * b - D) / (4 * p)};
        table.prime_class[static_cast<std::size_t>(p)] = class_index(data, f);
    }
    return table;
}

// Ideal counts in a class deviate from their mean density by O(N^{1/3});
// a cutoff with 10 N^{1/3 - sigma} / (sigma - 1/3) < tol is used.
std::int64_t series_length(double sigma, double tol) {
    const double n = std::pow(10.0 / ((sigma - 1.0 / 3.0) * tol), 1.0 / (sigma - 1.0 / 3.0));
    if (!(n <= static_cast<double>(kMaxIdealSeriesTerms))) {
        throw ResourceError("ideal-norm series: tolerance needs more than 2e7 terms at Re s = " +
                            std::to_string(sigma));
    }
    return std::max<std::int64_t>(1000, static_cast<std::int64_t>(n));
}

Complex hecke_imag_raw(const ClassGroupData& data, int chi, Complex s, int k, bool conj_labels, double tol) {
    Complex sum = 0.0;
    for (std::size_t a = 0; a < data.reduced_forms.size(); ++a) {
        const Complex c = data.characters[static_cast<std::size_t>(chi)][a];
        const Complex e = eisenstein(heegner_point(data.reduced_forms[a]), s, 1e-2 * tol).value;
        sum += (conj_labels ? std::conj(c) : c) * e;
    }
    const double absD = std::abs(static_cast<double>(data.D.D));
    const Complex pref = pow2(s + 1.0 + static_cast<double>(k)) * zeta(2.0 * s, 1e-15) *
                         std::exp(-0.5 * s * std::log(absD)) / static_cast<double>(data.omega);
    return pref * sum;
}

// int over one automorph period of E(z(u), s) du, z(u) = center + r tanh u + i r sech u.
Complex cycle_integral(const GeodesicCycle& cyc, Complex s, double tol) {
    const double L = cyc.period_length;
    auto f = [&](double u) {
        const HalfPlanePoint z{cyc.center + cyc.radius * std::tanh(u), cyc.radius / std::cosh(u), false};
        return eisenstein(z, s, 1e-2 * tol).value;
    };
    int n = 16;
    Complex sum = 0.0;
    for (int j = 0; j < n; ++j) {
        sum += f(L * j / n);
    }
    Complex estimate = sum * (L / n);
    while (n < kMaxCycleNodes) {
        for (int j = 0; j < n; ++j) {
            sum += f(L * (2 * j + 1) / (2.0 * n));
        }
        n *= 2;
        const Complex refined = sum * (L / n);
        if (std::abs(refined - estimate) <= tol * std::max(1.0, std::abs(refined))) {
            return refined;
        }
        estimate = refined;
    }
    throw AccuracyError("cycle integral: trapezoid rule did not settle within " + std::to_string(kMaxCycleNodes) +
                        " nodes");
}

Complex hecke_real_raw(const ClassGroupData& data, int chi, Complex s, int k, bool conj_labels, double tol) {
    Complex sum = 0.0;
    for (std::size_t a = 0; a < data.reduced_forms.size(); ++a) {
        const Complex c = data.characters[static_cast<std::size_t>(chi)][a];
        const GeodesicCycle cyc = geodesic_cycle(data.reduced_forms[a]);
        sum += (conj_labels ? std::conj(c) : c) * cyc.period_weight * cycle_integral(cyc, s, tol);
    }
    const double D = static_cast<double>(data.D.D);
    const Complex log_pref = -0.5 * s * std::log(D) + log_gamma(s) - 2.0 * log_gamma(0.5 * s);
    return pow2(static_cast<double>(k)) * zeta(2.0 * s, 1e-15) * std::exp(log_pref) * sum;
}

template <class Raw>
HeckePinning pin(const std::vector<std::int64_t>& discs, Raw raw) {
    struct Case {
        std::shared_ptr<const ClassGroupData> data;
        int chi;
        Complex ref;
    };
    std::vector<Case> cases;
    for (std::int64_t d : discs) {
        std::shared_ptr<const ClassGroupData> holder;
        group_of(Discriminant::fundamental_only(d), holder);
        for (int chi = 0; chi < static_cast<int>(holder->characters.size()); ++chi) {
            cases.push_back({holder, chi, lk_direct(holder->D, chi, 2.0, 1e-11).value});
        }
    }
    HeckePinning best;
    best.residual = INFINITY;
    double residual[3][2];
    for (int k = -1; k <= 1; ++k) {
        for (int conj_labels = 0; conj_labels < 2; ++conj_labels) {
            double worst = 0.0;
            for (const Case& c : cases) {
                const Complex v = raw(*c.data, c.chi, Complex(2.0), k, conj_labels != 0, 1e-11);
                worst = std::max(worst, std::abs(v - c.ref) / std::max(1.0, std::abs(c.ref)));
            }
            residual[k + 1][conj_labels] = worst;
            if (worst < best.residual) {
                best.residual = worst;
                best.power_of_two = k;
                best.conjugate_labels = conj_labels != 0;
            }
        }
    }
    const double* r = residual[best.power_of_two + 1];
    best.labels_distinguishable = std::abs(r[0] - r[1]) > 1e-6;
    if (!best.labels_distinguishable) {
        best.conjugate_labels = false;
    }
    return best;
}

}  // namespace

const char* to_string(LRoute route) {
    switch (route) {
        case LRoute::hecke: return "hecke";
        case LRoute::direct: return "direct";
        case LRoute::genus: return "genus";
    }
    return "?";
}

Complex dirichlet_L(std::int64_t d, Complex s, double tol) {
    require_finite(s, "dirichlet_L: s");
    if (d != 1 && !is_fundamental_discriminant(d)) {
        throw DomainError("dirichlet_L: " + std::to_string(d) + " is not a fundamental discriminant");
    }
    if (d == 1) {
        return zeta(s, tol);
    }
    const std::int64_t q = std::abs(d);
    const double qd = static_cast<double>(q);
    if (std::abs(s - 1.0) < 1e-12) {
        double sum = 0.0;
        for (std::int64_t r = 1; r < q; ++r) {
            const int c = kronecker_chi(d, r);
            if (c != 0) {
                sum += c * boost::math::digamma(static_cast<double>(r) / qd);
            }
        }
        return -sum / qd;
    }
    Complex sum = 0.0;
    for (std::int64_t r = 1; r < q; ++r) {
        const int c = kronecker_chi(d, r);
        if (c != 0) {
            sum += static_cast<double>(c) * hurwitz_zeta(s, static_cast<double>(r) / qd, 1e-2 * tol);
        }
    }
    return require_finite(std::exp(-s * std::log(qd)) * sum, "dirichlet_L");
}

Complex lk_ideal_series(const ClassGroupData& data, int chi_index, Complex s, double tol) {
    check_char(data, chi_index);
    if (s.real() < 1.25) {
        throw ConvergenceError("ideal-norm series needs Re s >= 1.25");
    }
    const std::int64_t N = series_length(s.real(), tol);
    const PrimeTable table = prime_table(data, N);
    const std::vector<Complex>& chi = data.characters[static_cast<std::size_t>(chi_index)];
    // a(n) counts primitive ideals only; the zeta(2s) factor restores the rest.
    // Powers p^e with e >= 2 of an inert p are never primitive; a split or
    // ramified prime contributes only its prime ideal powers.
    Complex sum = 0.0;
    for (std::int64_t n = 1; n <= N; ++n) {
        Complex a = 1.0;
        std::int64_t m = n;
        while (m > 1 && a != 0.0) {
            const std::int64_t p = table.spf[static_cast<std::size_t>(m)];
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            const int k = table.kind[static_cast<std::size_t>(p)];
            if (k == -1) {
                a = 0.0;
            } else if (k == 0) {
                a *= e == 1 ? chi[static_cast<std::size_t>(table.prime_class[static_cast<std::size_t>(p)])] : 0.0;
            } else {
                const Complex alpha = chi[static_cast<std::size_t>(table.prime_class[static_cast<std::size_t>(p)])];
                a *= std::pow(alpha, e) + std::pow(std::conj(alpha), e);
            }
        }
        if (a != 0.0) {
            sum += a * std::exp(-s * std::log(static_cast<double>(n)));
        }
    }
    // Primitive ideals of norm <= N have density L(1, chi_D) / zeta(2) for the
    // trivial character and mean zero otherwise.
    bool trivial = true;
    for (const Complex& c : chi) {
        trivial = trivial && std::abs(c - 1.0) < 1e-12;
    }
    if (trivial) {
        const double density = dirichlet_L(data.D.D, 1.0).real() / (kPi * kPi / 6.0);
        sum += density * std::exp((1.0 - s) * std::log(static_cast<double>(N) + 0.5)) / (s - 1.0);
    }
    return zeta(2.0 * s, 1e-15) * sum;
}

LValue lk_direct(const Discriminant& D, int char_index, Complex s, double tol) {
    std::shared_ptr<const ClassGroupData> holder;
    const ClassGroupData& data = group_of(D, holder);
    check_char(data, char_index);
    if (s.real() < 1.25) {
        throw ConvergenceError("lk_direct needs Re s >= 1.25");
    }
    LValue out{D, char_index, s, 0.0, LRoute::direct};
    if (D.D > 0) {
        out.value = lk_ideal_series(data, char_index, s, tol);
        return out;
    }
    Complex sum = 0.0;
    for (std::size_t a = 0; a < data.reduced_forms.size(); ++a) {
        const QuadraticForm& f = data.reduced_forms[a];
        const GramMatrix g = GramMatrix::general(static_cast<double>(f.a), 0.5 * static_cast<double>(f.b),
                                                 static_cast<double>(f.c));
        sum += data.characters[static_cast<std::size_t>(char_index)][a] * epstein_direct(g, s, 1e-2 * tol);
    }
    out.value = sum / static_cast<double>(data.omega);
    return out;
}

Complex lk_euler_product(const ClassGroupData& data, int chi_index, Complex s, std::int64_t prime_limit) {
    check_char(data, chi_index);
    const PrimeTable table = prime_table(data, prime_limit);
    const std::vector<Complex>& chi = data.characters[static_cast<std::size_t>(chi_index)];
    Complex log_product = 0.0;
    for (std::int64_t p = 2; p <= prime_limit; ++p) {
        if (table.spf[static_cast<std::size_t>(p)] != p) {
            continue;
        }
        const Complex ps = std::exp(-s * std::log(static_cast<double>(p)));
        const int k = table.kind[static_cast<std::size_t>(p)];
        if (k == -1) {
            log_product -= std::log(1.0 - ps * ps);
            continue;
        }
        const Complex alpha = chi[static_cast<std::size_t>(table.prime_class[static_cast<std::size_t>(p)])];
        log_product -= std::log(1.0 - alpha * ps);
        if (k == 1) {
            log_product -= std::log(1.0 - std::conj(alpha) * ps);
        }
    }
    return std::exp(log_product);
}

LValue lk_hecke_imag(const Discriminant& D, int char_index, Complex s, double tol) {
    if (D.D >= 0) {
        throw DomainError("lk_hecke_imag needs D < 0");
    }
    std::shared_ptr<const ClassGroupData> holder;
    const ClassGroupData& data = group_of(D, holder);
    check_char(data, char_index);
    if (std::abs(2.0 * s - 1.0) < 1e-12) {
        throw PoleError("lk_hecke_imag: zeta(2s) has its pole at s = 1/2");
    }
    return {D, char_index, s, hecke_imag_raw(data, char_index, s, kHeckeImagPowerOfTwo, false, tol), LRoute::hecke};
}

LValue lk_hecke_real(const Discriminant& D, int char_index, Complex s, double tol) {
    if (D.D <= 0) {
        throw DomainError("lk_hecke_real needs D > 0");
    }
    std::shared_ptr<const ClassGroupData> holder;
    const ClassGroupData& data = group_of(D, holder);
    check_char(data, char_index);
    if (std::abs(2.0 * s - 1.0) < 1e-12) {
        throw PoleError("lk_hecke_real: zeta(2s) has its pole at s = 1/2");
    }
    return {D, char_index, s, hecke_real_raw(data, char_index, s, kHeckeRealPowerOfTwo, false, tol), LRoute::hecke};
}

LValue lk_hecke(const Discriminant& D, int char_index, Complex s, double tol) {
    return D.D < 0 ? lk_hecke_imag(D, char_index, s, tol) : lk_hecke_real(D, char_index, s, tol);
}

HeckePinning pin_hecke_imag() { return pin({-23}, hecke_imag_raw); }

HeckePinning pin_hecke_real() { return pin({5, 21}, hecke_real_raw); }

GenusCheck genus_check(const Discriminant& D, std::int64_t d1, std::int64_t d2, Complex s, double tol) {
    if (d1 == 1 || d2 == 1 || !is_fundamental_discriminant(d1) || !is_fundamental_discriminant(d2) ||
        d1 * d2 != D.D) {
        throw DomainError("genus_check: " + std::to_string(d1) + " * " + std::to_string(d2) +
                          " is not a factorization of " + std::to_string(D.D) + " into fundamental discriminants");
    }
    std::shared_ptr<const ClassGroupData> holder;
    const ClassGroupData& data = group_of(D, holder);
    const Complex target = dirichlet_L(d1, 2.0, 1e-14) * dirichlet_L(d2, 2.0, 1e-14);
    int match = -1;
    for (int chi = 0; chi < static_cast<int>(data.characters.size()); ++chi) {
        bool real = true;
        for (const Complex& c : data.characters[static_cast<std::size_t>(chi)]) {
            real = real && std::abs(c.imag()) < 1e-12;
        }
        if (real && std::abs(lk_hecke(D, chi, 2.0, 1e-10).value - target) < 1e-6 * std::abs(target)) {
            match = chi;
            break;
        }
    }
    if (match < 0) {
        throw DomainError("genus_check: no real character of D = " + std::to_string(D.D) +
                          " factors as L(chi_" + std::to_string(d1) + ") L(chi_" + std::to_string(d2) + ")");
    }
    return {lk_hecke(D, match, s, tol).value, dirichlet_L(d1, s, 1e-2 * tol) * dirichlet_L(d2, s, 1e-2 * tol), match};
}

SecondMoment second_moment(const Discriminant& D, double t, double tol) {
    if (D.D >= 0) {
        throw DomainError("second_moment needs D < 0");
    }
    if (std::abs(t) < 1e-12) {
        throw PoleError("second_moment: zeta(1 + 2it) has its pole at t = 0");
    }
    std::shared_ptr<const ClassGroupData> holder;
    const ClassGroupData& data = group_of(D, holder);
    const Complex s(0.5, t);
    std::vector<Complex> values;
    double sum_sq = 0.0;
    for (const QuadraticForm& f : data.reduced_forms) {
        values.push_back(eisenstein(heegner_point(f), s, 1e-2 * tol).value);
        sum_sq += std::norm(values.back());
    }
    const double absD = std::abs(static_cast<double>(D.D));
    const Complex pref = pow2(s + 1.0 + static_cast<double>(kHeckeImagPowerOfTwo)) * zeta(2.0 * s, 1e-15) *
                         std::exp(-0.5 * s * std::log(absD)) / static_cast<double>(data.omega);
    SecondMoment out;
    for (const auto& chi : data.characters) {
        Complex sum = 0.0;
        for (std::size_t a = 0; a < values.size(); ++a) {
            sum += chi[a] * values[a];
        }
        out.direct_route += std::norm(pref * sum);
    }
    const double h = static_cast<double>(data.h);
    out.orthogonality_route = std::pow(2.0, 3 + 2 * kHeckeImagPowerOfTwo) * h * std::norm(zeta(2.0 * s, 1e-15)) /
                              (static_cast<double>(data.omega * data.omega) * std::sqrt(absD)) * sum_sq;
    return out;
}

}  // namespace hecke
