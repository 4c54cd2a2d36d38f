#include "hecke/quadforms.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "hecke/arith.hpp"
#include "hecke/errors.hpp"

namespace hecke {
namespace {

using i128 = __int128;
using BigInt = boost::multiprecision::cpp_int;

std::int64_t narrow(i128 v, const char* what) {
    if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN)) {
        throw RangeError(std::string(what) + ": coefficient overflow");
    }
    return static_cast<std::int64_t>(v);
}

// (g, x, y) with a x + b y = g = gcd(a, b) >= 0.
std::tuple<std::int64_t, std::int64_t, std::int64_t> ext_gcd(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b, old_x = 1, x = 0, old_y = 0, y = 1;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_x, x) = std::make_pair(x, old_x - q * x);
        std::tie(old_y, y) = std::make_pair(y, old_y - q * y);
    }
    if (old_r < 0) {
        return {-old_r, -old_x, -old_y};
    }
    return {old_r, old_x, old_y};
}

QuadraticForm negated(const QuadraticForm& f) {
    return {-f.a, f.b, -f.c};
}

// Gauss/Dirichlet composition (Cohen, Alg. 5.4.7) without reduction. Needs
// a > 0 in both inputs; works for either sign of the discriminant.
QuadraticForm compose_raw(QuadraticForm f1, QuadraticForm f2) {
    if (f1.disc() != f2.disc()) {
        throw DomainError("compose: discriminants differ");
    }
    if (f1.a <= 0 || f2.a <= 0) {
        throw DomainError("compose: leading coefficients must be positive");
    }
    const std::int64_t D = f1.disc();
    if (f1.a > f2.a) {
        std::swap(f1, f2);
    }
    const std::int64_t s = (f1.b + f2.b) / 2;
    const std::int64_t n = f2.b - s;
    std::int64_t y1 = 0, d = f1.a;
    if (f2.a % f1.a != 0) {
        auto [g, u, v] = ext_gcd(f2.a, f1.a);
        (void)v;
        d = g;
        y1 = u;
    }
    std::int64_t x2 = 0, y2 = -1, d1 = d;
    if (s % d != 0) {
        auto [g, u, v] = ext_gcd(s, d);
        d1 = g;
        x2 = u;
        y2 = -v;
    }
    const std::int64_t v1 = f1.a / d1;
    const std::int64_t v2 = f2.a / d1;
    const i128 raw = static_cast<i128>(y1) * y2 % v1 * n - static_cast<i128>(x2) * f2.c;
    i128 r = raw % v1;
    if (r < 0) {
        r += v1;
    }
    const i128 b3 = f2.b + 2 * static_cast<i128>(v2) * r;
    const i128 a3 = static_cast<i128>(v1) * v2;
    const i128 c3 = (b3 * b3 - D) / (4 * a3);
    return {narrow(a3, "compose"), narrow(b3, "compose"), narrow(c3, "compose")};
}

// Right neighbour's middle coefficient: b' = -b (mod 2|c|) in the window
// (-|c|, |c|] when |c| > sqrt D, else the largest such b' below sqrt D.
std::int64_t neighbour_b(std::int64_t D, std::int64_t b, std::int64_t c) {
    const std::int64_t m = 2 * std::llabs(c);
    const std::int64_t r = floor_sqrt(D);
    if (static_cast<i128>(c) * c > D) {
        // Representative of -b in (-|c|, |c|].
        std::int64_t bp = mod_floor(-b, m);
        if (bp > std::llabs(c)) {
            bp -= m;
        }
        return bp;
    }
    return r - mod_floor(r + b, m);
}

}  // namespace

Discriminant Discriminant::make(std::int64_t d) {
    const std::int64_t r = mod_floor(d, 4);
    if (d == 0 || (r != 0 && r != 1)) {
        throw DomainError("discriminant must be nonzero and 0 or 1 mod 4, got " + std::to_string(d));
    }
    return {d, is_fundamental_discriminant(d)};
}

Discriminant Discriminant::fundamental_only(std::int64_t d) {
    Discriminant out = make(d);
    if (!out.fundamental) {
        throw DomainError("discriminant " + std::to_string(d) + " is not fundamental");
    }
    return out;
}

std::int64_t QuadraticForm::disc() const {
    return narrow(static_cast<i128>(b) * b - 4 * static_cast<i128>(a) * c, "disc");
}

std::int64_t QuadraticForm::operator()(std::int64_t x, std::int64_t y) const {
    return a * x * x + b * x * y + c * y * y;
}

std::string to_string(const QuadraticForm& f) {
    return "(" + std::to_string(f.a) + "," + std::to_string(f.b) + "," + std::to_string(f.c) + ")";
}

QuadraticForm transform(const QuadraticForm& f, const ModularWord& g) {
    const i128 p = g.p, q = g.q, r = g.r, s = g.s;
    const i128 a = f.a, b = f.b, c = f.c;
    const i128 na = a * p * p + b * p * r + c * r * r;
    const i128 nb = 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s;
    const i128 nc = a * q * q + b * q * s + c * s * s;
    return {narrow(na, "transform"), narrow(nb, "transform"), narrow(nc, "transform")};
}

bool is_reduced_definite(const QuadraticForm& f) {
    if (!(-f.a < f.b && f.b <= f.a && f.a <= f.c)) {
        return false;
    }
    return f.a != f.c || f.b >= 0;
}

std::pair<QuadraticForm, ModularWord> reduce_definite(const QuadraticForm& f) {
    if (f.disc() >= 0 || f.a <= 0) {
        throw DomainError("reduce_definite needs a positive definite form, got " + to_string(f));
    }
    QuadraticForm g = f;
    ModularWord word;
    const ModularWord swap{0, -1, 1, 0};
    for (int step = 0; step < kMaxReductionSteps; ++step) {
        if (!(-g.a < g.b && g.b <= g.a)) {
            // (x, y) -> (x + k y, y) sends b to b + 2 a k.
            const std::int64_t k = static_cast<std::int64_t>(
                std::floor(static_cast<long double>(g.a - g.b) / (2.0L * g.a)));
            const ModularWord shift{1, k, 0, 1};
            g = transform(g, shift);
            word = word * shift;
        }
        if (g.a > g.c || (g.a == g.c && g.b < 0)) {
            g = transform(g, swap);
            word = word * swap;
            continue;
        }
        if (is_reduced_definite(g)) {
            return {g, word};
        }
    }
    throw ConvergenceError("reduce_definite: step budget exhausted for " + to_string(f));
}

std::vector<QuadraticForm> enumerate_reduced(const Discriminant& d) {
    if (d.D >= 0 || !d.fundamental) {
        throw DomainError("enumerate_reduced needs a negative fundamental discriminant");
    }
    const std::int64_t absd = -d.D;
    std::vector<QuadraticForm> forms;
    // a <= sqrt(|D| / 3).
    for (std::int64_t a = 1; 3 * a * a <= absd; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            const std::int64_t num = b * b - d.D;
            if (num % (4 * a) != 0) {
                continue;
            }
            const QuadraticForm f{a, b, num / (4 * a)};
            if (is_reduced_definite(f) && std::gcd(std::gcd(f.a, f.b), f.c) == 1) {
                forms.push_back(f);
            }
        }
    }
    std::sort(forms.begin(), forms.end());
    return forms;
}

std::int64_t rho(const Discriminant& d, std::int64_t a) {
    if (a < 1) {
        throw DomainError("rho needs a >= 1");
    }
    const i128 m = 4 * static_cast<i128>(a);
    i128 target = d.D % m;
    if (target < 0) {
        target += m;
    }
    std::int64_t count = 0;
    for (std::int64_t b = 1; b <= 2 * a; ++b) {
        if (static_cast<i128>(b) * b % m == target) {
            ++count;
        }
    }
    return count;
}

QuadraticForm compose(const QuadraticForm& f, const QuadraticForm& g) {
    if (f.disc() != g.disc()) {
        throw DomainError("compose: discriminants differ: " + to_string(f) + " vs " + to_string(g));
    }
    if (f.disc() >= 0) {
        throw DomainError("compose: positive definite forms only");
    }
    return reduce_definite(compose_raw(f, g)).first;
}

bool is_reduced_indefinite(const QuadraticForm& f) {
    const i128 D = f.disc();
    if (D <= 0 || f.b <= 0 || static_cast<i128>(f.b) * f.b >= D) {
        return false;
    }
    const i128 two_a = 2 * static_cast<i128>(std::llabs(f.a));
    const i128 lo = two_a + f.b;  // sqrt D - b < 2|a|  <=>  (2|a| + b)^2 > D
    const i128 hi = two_a - f.b;  // 2|a| < sqrt D + b  <=>  2|a| - b < sqrt D
    return lo * lo > D && (hi < 0 || hi * hi < D);
}

std::pair<QuadraticForm, ModularWord> rho_step(const QuadraticForm& f) {
    const std::int64_t D = f.disc();
    if (D <= 0 || is_square(D)) {
        throw DomainError("rho_step needs an indefinite form of nonsquare discriminant, got " + to_string(f));
    }
    const std::int64_t bp = neighbour_b(D, f.b, f.c);
    const std::int64_t t = (bp + f.b) / (2 * f.c);
    const ModularWord step{0, -1, 1, t};
    const QuadraticForm g{f.c, bp, narrow((static_cast<i128>(bp) * bp - D) / (4 * static_cast<i128>(f.c)), "rho_step")};
    return {g, step};
}

std::pair<QuadraticForm, ModularWord> reduce_indefinite(const QuadraticForm& f) {
    QuadraticForm g = f;
    ModularWord word;
    for (int step = 0; step < kMaxReductionSteps; ++step) {
        if (is_reduced_indefinite(g)) {
            return {g, word};
        }
        auto [next, m] = rho_step(g);
        g = next;
        word = word * m;
    }
    throw ConvergenceError("reduce_indefinite: step budget exhausted for " + to_string(f));
}

std::vector<QuadraticForm> reduction_cycle(const QuadraticForm& f) {
    if (!is_reduced_indefinite(f)) {
        throw DomainError("reduction_cycle needs a reduced indefinite form, got " + to_string(f));
    }
    std::vector<QuadraticForm> cycle{f};
    QuadraticForm g = rho_step(f).first;
    while (g != f) {
        cycle.push_back(g);
        g = rho_step(g).first;
    }
    return cycle;
}

FundamentalUnit fundamental_unit(const Discriminant& d) {
    if (d.D <= 0 || !d.fundamental) {
        throw DomainError("fundamental_unit needs a positive fundamental discriminant");
    }
    const std::int64_t D = d.D;
    const double sqrt_d = std::sqrt(static_cast<double>(D));
    const std::int64_t r = floor_sqrt(D);
    // Continued fraction of (s + sqrt D) / 2: the complete quotients from the
    // first one on are purely periodic and their product over one period is
    // the fundamental unit.
    std::int64_t P = D % 2;
    std::int64_t Q = 2;
    auto advance = [&] {
        const std::int64_t a = (P + r) / Q;
        P = a * Q - P;
        Q = (D - P * P) / Q;
    };
    advance();
    const std::int64_t P1 = P, Q1 = Q;
    double log_sum = 0.0;
    int period = 0;
    do {
        log_sum += std::log((static_cast<double>(P) + sqrt_d) / static_cast<double>(Q));
        advance();
        ++period;
    } while (P != P1 || Q != Q1);

    FundamentalUnit out;
    out.unit_log = log_sum;
    out.norm = period % 2 == 0 ? 1 : -1;
    out.positive_log = out.norm == 1 ? log_sum : 2.0 * log_sum;

    // The automorph of the principal form, read off its reduction cycle, gives
    // the minimal solution of t^2 - D u^2 = 4 exactly.
    const std::int64_t b0 = (r % 2 == D % 2) ? r : r - 1;
    const QuadraticForm principal{1, b0, (b0 * b0 - D) / 4};
    BigInt p = 1, q = 0, rr = 0, s = 1;
    QuadraticForm g = principal;
    do {
        auto [next, m] = rho_step(g);
        // (p q; r s) * (0 -1; 1 t)
        BigInt np = q, nq = -p + q * m.s;
        BigInt nr = s, ns = -rr + s * m.s;
        p = np;
        q = nq;
        rr = nr;
        s = ns;
        g = next;
    } while (g != principal);
    BigInt t = p + s;
    BigInt u = rr / principal.a;
    if (t < 0) {
        t = -t;
    }
    if (u < 0) {
        u = -u;
    }
    if (t <= BigInt(INT64_MAX) && u <= BigInt(INT64_MAX)) {
        out.pell_tu = std::make_pair(static_cast<std::int64_t>(t), static_cast<std::int64_t>(u));
    }
    return out;
}

HalfPlanePoint heegner_point(const QuadraticForm& f) {
    const std::int64_t D = f.disc();
    if (D >= 0 || f.a <= 0) {
        throw DomainError("heegner_point needs a positive definite form, got " + to_string(f));
    }
    const double two_a = 2.0 * static_cast<double>(f.a);
    HalfPlanePoint z{-static_cast<double>(f.b) / two_a, std::sqrt(static_cast<double>(-D)) / two_a, false};
    z.reduced = is_reduced_definite(f);
    return z;
}

GeodesicCycle geodesic_cycle(const QuadraticForm& f) {
    const std::int64_t D = f.disc();
    if (D <= 0 || f.a == 0) {
        throw DomainError("geodesic_cycle needs an indefinite form with a != 0, got " + to_string(f));
    }
    const std::int64_t g = std::gcd(std::gcd(f.a, f.b), f.c);
    const Discriminant disc = Discriminant::fundamental_only(D / (g * g));
    const FundamentalUnit unit = fundamental_unit(disc);
    GeodesicCycle out;
    out.form = f;
    out.center = -static_cast<double>(f.b) / (2.0 * static_cast<double>(f.a));
    out.radius = std::sqrt(static_cast<double>(D)) / (2.0 * std::fabs(static_cast<double>(f.a)));
    out.period_length = 2.0 * unit.positive_log;
    out.period_weight = unit.unit_log / unit.positive_log;
    if (unit.pell_tu && g == 1) {
        const i128 t = unit.pell_tu->first;
        const i128 u = unit.pell_tu->second;
        try {
            out.automorph = ModularWord{narrow((t - f.b * u) / 2, "automorph"), narrow(-f.c * u, "automorph"),
                                        narrow(f.a * u, "automorph"), narrow((t + f.b * u) / 2, "automorph")};
        } catch (const RangeError&) {
            out.automorph.reset();
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Class groups.

namespace {

// Canonical representative of the wide class of a reduced indefinite form:
// the lexicographically smallest form with a > 0 on the cycles of f and -f.
QuadraticForm wide_canonical(const QuadraticForm& reduced) {
    QuadraticForm best{INT64_MAX, 0, 0};
    for (const auto& start : {reduced, negated(reduced)}) {
        for (const auto& g : reduction_cycle(start)) {
            if (g.a > 0 && g < best) {
                best = g;
            }
        }
    }
    return best;
}

std::vector<QuadraticForm> wide_class_representatives(std::int64_t D) {
    // All reduced forms: 0 < b < sqrt D, b = D (mod 2), a c = -(D - b^2)/4.
    std::set<QuadraticForm> remaining;
    const std::int64_t r = floor_sqrt(D);
    for (std::int64_t b = (D % 2 == 0 ? 2 : 1); b <= r; b += 2) {
        const std::int64_t n = (D - b * b) / 4;
        for (std::int64_t a = 1; a * a <= n; ++a) {
            if (n % a != 0) {
                continue;
            }
            for (std::int64_t aa : {a, n / a}) {
                for (std::int64_t sign : {1, -1}) {
                    const QuadraticForm f{sign * aa, b, -sign * (n / aa)};
                    if (is_reduced_indefinite(f) && std::gcd(std::gcd(aa, b), n / aa) == 1) {
                        remaining.insert(f);
                    }
                }
            }
        }
    }
    std::vector<QuadraticForm> reps;
    while (!remaining.empty()) {
        const QuadraticForm f = *remaining.begin();
        QuadraticForm best{INT64_MAX, 0, 0};
        for (const auto& start : {f, negated(f)}) {
            for (const auto& g : reduction_cycle(start)) {
                remaining.erase(g);
                if (g.a > 0 && g < best) {
                    best = g;
                }
            }
        }
        reps.push_back(best);
    }
    std::sort(reps.begin(), reps.end());
    return reps;
}

// Abelian group given by a multiplication oracle on indices 0..h-1 (0 the
// identity). Produces the invariant-factor style decomposition by repeated
// extraction of an element of maximal order modulo the subgroup generated so
// far, corrected so that its order equals its order in the quotient.
struct Decomposition {
    std::vector<std::pair<std::int32_t, std::int32_t>> factors;  // (generator, order)
    std::vector<std::vector<std::int32_t>> exponents;             // per element
    std::vector<std::int32_t> element_of_code;                    // mixed-radix code -> element
};

template <class Mul>
Decomposition decompose(std::int32_t h, Mul mul) {
    Decomposition out;
    std::vector<std::int64_t> code_of(static_cast<std::size_t>(h), -1);
    std::vector<std::int64_t> strides;
    std::vector<std::int32_t> members{0};
    code_of[0] = 0;
    out.element_of_code = {0};

    auto code_to_exponents = [&](std::int64_t code) {
        std::vector<std::int32_t> e(out.factors.size());
        for (std::size_t j = 0; j < out.factors.size(); ++j) {
            e[j] = static_cast<std::int32_t>(code / strides[j] % out.factors[j].second);
        }
        return e;
    };
    auto exponents_to_code = [&](const std::vector<std::int64_t>& e) {
        std::int64_t code = 0;
        for (std::size_t j = 0; j < out.factors.size(); ++j) {
            code += mod_floor(e[j], out.factors[j].second) * strides[j];
        }
        return code;
    };

    while (static_cast<std::int32_t>(members.size()) < h) {
        const std::int64_t quotient = h / static_cast<std::int64_t>(members.size());
        std::int32_t best = -1;
        std::int64_t best_order = 0;
        for (std::int32_t x = 1; x < h && best_order < quotient; ++x) {
            if (code_of[static_cast<std::size_t>(x)] >= 0) {
                continue;
            }
            std::int64_t m = 1;
            std::int32_t power = x;
            while (code_of[static_cast<std::size_t>(power)] < 0) {
                power = mul(power, x);
                ++m;
            }
            if (m > best_order) {
                best_order = m;
                best = x;
            }
        }
        // x^m lies in H; find y in H with y^m = x^m and replace x by x y^{-1}.
        std::int32_t power = best;
        for (std::int64_t k = 1; k < best_order; ++k) {
            power = mul(power, best);
        }
        const auto target = code_to_exponents(code_of[static_cast<std::size_t>(power)]);
        std::int32_t generator = best;
        bool fixed = false;
        for (std::int64_t code = 0; code < static_cast<std::int64_t>(members.size()) && !fixed; ++code) {
            auto e = code_to_exponents(code);
            bool match = true;
            for (std::size_t j = 0; j < e.size(); ++j) {
                if ((static_cast<std::int64_t>(e[j]) * best_order - target[j]) % out.factors[j].second != 0) {
                    match = false;
                    break;
                }
            }
            if (match) {
                std::vector<std::int64_t> inv(e.size());
                for (std::size_t j = 0; j < e.size(); ++j) {
                    inv[j] = -static_cast<std::int64_t>(e[j]);
                }
                const std::int32_t y_inv = out.element_of_code[static_cast<std::size_t>(exponents_to_code(inv))];
                generator = mul(best, y_inv);
                fixed = true;
            }
        }
        if (!fixed) {
            throw Error("class group decomposition failed: no root in subgroup");
        }
        // Extend H = H x <generator>.
        const std::int64_t stride = static_cast<std::int64_t>(members.size());
        strides.push_back(stride);
        out.factors.emplace_back(generator, static_cast<std::int32_t>(best_order));
        std::vector<std::int32_t> new_members = members;
        std::vector<std::int32_t> layer = members;
        out.element_of_code.resize(static_cast<std::size_t>(stride * best_order));
        for (std::int64_t k = 1; k < best_order; ++k) {
            for (std::size_t i = 0; i < layer.size(); ++i) {
                layer[i] = mul(layer[i], generator);
                const std::int64_t code = code_of[static_cast<std::size_t>(members[i])] + k * stride;
                if (code_of[static_cast<std::size_t>(layer[i])] >= 0) {
                    throw Error("class group decomposition failed: generator not independent");
                }
                code_of[static_cast<std::size_t>(layer[i])] = code;
                out.element_of_code[static_cast<std::size_t>(code)] = layer[i];
                new_members.push_back(layer[i]);
            }
        }
        members = std::move(new_members);
    }
    out.exponents.resize(static_cast<std::size_t>(h));
    for (std::int32_t x = 0; x < h; ++x) {
        out.exponents[static_cast<std::size_t>(x)] = code_to_exponents(code_of[static_cast<std::size_t>(x)]);
    }
    return out;
}

void fill_group_structure(ClassGroupData& data, const Decomposition& dec) {
    const std::int64_t h = data.h;
    const std::size_t nf = dec.factors.size();
    std::vector<std::int64_t> strides(nf);
    std::int64_t stride = 1;
    for (std::size_t j = 0; j < nf; ++j) {
        strides[j] = stride;
        stride *= dec.factors[j].second;
    }
    auto code_of = [&](const std::vector<std::int32_t>& e1, const std::vector<std::int32_t>& e2) {
        std::int64_t code = 0;
        for (std::size_t j = 0; j < nf; ++j) {
            code += (e1[j] + e2[j]) % dec.factors[j].second * strides[j];
        }
        return code;
    };
    data.composition_table.assign(static_cast<std::size_t>(h * h), 0);
    for (std::int64_t i = 0; i < h; ++i) {
        for (std::int64_t j = 0; j < h; ++j) {
            data.composition_table[static_cast<std::size_t>(i * h + j)] = dec.element_of_code[static_cast<std::size_t>(
                code_of(dec.exponents[static_cast<std::size_t>(i)], dec.exponents[static_cast<std::size_t>(j)]))];
        }
    }
    data.cyclic_decomposition = dec.factors;

    // Character k sends the element with exponents e to exp(2 pi i sum_j k_j e_j / n_j).
    std::vector<std::vector<std::int32_t>> table;
    table.reserve(static_cast<std::size_t>(h));
    for (std::int64_t code = 0; code < h; ++code) {
        std::vector<std::int32_t> row(static_cast<std::size_t>(h));
        for (std::int64_t x = 0; x < h; ++x) {
            std::int64_t e = 0;
            for (std::size_t j = 0; j < nf; ++j) {
                const std::int64_t n = dec.factors[j].second;
                const std::int64_t k = code / strides[j] % n;
                e += k * dec.exponents[static_cast<std::size_t>(x)][j] % n * (h / n);
            }
            row[static_cast<std::size_t>(x)] = static_cast<std::int32_t>(e % h);
        }
        table.push_back(std::move(row));
    }
    std::sort(table.begin(), table.end());
    data.char_exponents = std::move(table);
    data.characters.clear();
    for (const auto& row : data.char_exponents) {
        std::vector<Complex> values;
        values.reserve(row.size());
        for (std::int32_t e : row) {
            values.push_back(std::polar(1.0, 2.0 * kPi * e / static_cast<double>(h)));
        }
        data.characters.push_back(std::move(values));
    }
}

}  // namespace

std::int32_t class_index(const ClassGroupData& data, const QuadraticForm& f) {
    if (f.disc() != data.D.D) {
        throw DomainError("class_index: form " + to_string(f) + " has the wrong discriminant");
    }
    QuadraticForm key;
    if (data.D.D < 0) {
        key = reduce_definite(f).first;
    } else {
        key = wide_canonical(reduce_indefinite(f).first);
    }
    const auto it = std::lower_bound(data.reduced_forms.begin(), data.reduced_forms.end(), key);
    if (it == data.reduced_forms.end() || *it != key) {
        throw Error("class_index: no class found for " + to_string(f));
    }
    return static_cast<std::int32_t>(it - data.reduced_forms.begin());
}

ClassGroupData compute_class_group(const Discriminant& d) {
    if (!d.fundamental) {
        throw DomainError("class_group needs a fundamental discriminant, got " + std::to_string(d.D));
    }
    if (std::llabs(d.D) > kMaxClassGroupDisc) {
        throw ResourceError("class_group: |D| above the cap of " + std::to_string(kMaxClassGroupDisc));
    }
    ClassGroupData data;
    data.D = d;
    if (d.D < 0) {
        data.reduced_forms = enumerate_reduced(d);
        data.omega = d.D == -3 ? 6 : (d.D == -4 ? 4 : 2);
    } else {
        data.reduced_forms = wide_class_representatives(d.D);
        data.unit_log = fundamental_unit(d).unit_log;
    }
    data.h = static_cast<std::int64_t>(data.reduced_forms.size());
    if (data.h > kMaxClassNumber) {
        throw ResourceError("class_group: h = " + std::to_string(data.h) + " exceeds the table cap");
    }
    auto mul = [&](std::int32_t i, std::int32_t j) {
        const QuadraticForm& f = data.reduced_forms[static_cast<std::size_t>(i)];
        const QuadraticForm& g = data.reduced_forms[static_cast<std::size_t>(j)];
        return class_index(data, d.D < 0 ? compose(f, g) : compose_raw(f, g));
    };
    fill_group_structure(data, decompose(static_cast<std::int32_t>(data.h), mul));
    return data;
}

}  // namespace hecke
