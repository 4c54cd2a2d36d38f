#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "hecke/errors.hpp"
#include "hecke/lfunctions.hpp"

using hecke::Complex;
using hecke::Discriminant;
using hecke::kPi;

namespace {

constexpr double kZeta2 = kPi * kPi / 6.0;
constexpr double kCatalan = 0.915965594177219015;

struct CacheDir {
    CacheDir() {
        const auto dir = std::filesystem::temp_directory_path() / "hecke-test-lfunctions";
        std::filesystem::remove_all(dir);
        hecke::set_cache_directory(dir);
    }
} cache_dir;

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

// Index of the character conj(chi).
int conjugate_index(const hecke::ClassGroupData& g, int chi) {
    for (int k = 0; k < static_cast<int>(g.characters.size()); ++k) {
        bool same = true;
        for (std::size_t a = 0; a < g.characters[0].size(); ++a) {
            same = same && std::abs(g.characters[k][a] - std::conj(g.characters[chi][a])) < 1e-12;
        }
        if (same) {
            return k;
        }
    }
    return -1;
}

}  // namespace

TEST_CASE("kronecker and Dirichlet L-values") {
    CHECK(hecke::kronecker_chi(-4, 3) == -1);
    CHECK(hecke::kronecker_chi(-23, 1) == 1);
    for (int n = 1; n < 40; ++n) {
        CHECK(hecke::kronecker_chi(5, n) == hecke::kronecker_chi(5, n + 5));
    }
    CHECK(std::abs(hecke::dirichlet_L(-4, 2.0) - kCatalan) < 1e-12);
    CHECK(std::abs(hecke::dirichlet_L(-3, 1.0) - kPi / (3.0 * std::sqrt(3.0))) < 1e-12);
    CHECK(std::abs(hecke::dirichlet_L(1, 2.0) - kZeta2) < 1e-13);
    // L(1, chi_5) = 2 log(golden ratio) / sqrt 5.
    CHECK(std::abs(hecke::dirichlet_L(5, 1.0) - 2.0 * std::log((1.0 + std::sqrt(5.0)) / 2.0) / std::sqrt(5.0)) < 1e-12);
    CHECK_THROWS_AS(hecke::dirichlet_L(20, 2.0), hecke::DomainError);
}

TEST_CASE("direct route examples") {
    const auto d4 = Discriminant::make(-4);
    CHECK(std::abs(hecke::lk_direct(d4, 0, 2.0).value - 1.5067030099229851) < 1e-12);
    for (std::int64_t d : {-23, -3, -84, 5, 8, 21}) {
        const auto D = Discriminant::make(d);
        const Complex exact = kZeta2 * hecke::dirichlet_L(d, 2.0, 1e-14);
        CHECK(rel(hecke::lk_direct(D, 0, 2.0).value, exact) < 1e-10);
    }
    const auto d23 = Discriminant::make(-23);
    const auto g = hecke::class_group(d23);
    REQUIRE(g.h == 3);
    const int cubic = g.characters[1][1].imag() != 0.0 ? 1 : 2;
    const Complex v = hecke::lk_direct(d23, cubic, 2.0).value;
    const Complex w = hecke::lk_direct(d23, conjugate_index(g, cubic), 2.0).value;
    CHECK(rel(w, std::conj(v)) < 1e-12);
    CHECK_THROWS_AS(hecke::lk_direct(d23, 0, 1.2), hecke::ConvergenceError);
    CHECK_THROWS_AS(hecke::lk_direct(d23, 3, 2.0), hecke::DomainError);
    CHECK_THROWS_AS(hecke::lk_direct(Discriminant::make(-16), 0, 2.0), hecke::DomainError);
}

TEST_CASE("ideal-norm series agrees with the lattice sums") {
    for (std::int64_t d : {-23, -47, -84}) {
        const auto D = Discriminant::make(d);
        const auto g = hecke::class_group(D);
        for (int chi = 0; chi < g.h; ++chi) {
            const Complex s(2.0, 1.5);
            CHECK(rel(hecke::lk_ideal_series(g, chi, s), hecke::lk_direct(D, chi, s).value) < 1e-9);
        }
    }
}

TEST_CASE("pinned prefactors") {
    const auto imag = hecke::pin_hecke_imag();
    CHECK(imag.power_of_two == hecke::kHeckeImagPowerOfTwo);
    CHECK_FALSE(imag.labels_distinguishable);
    CHECK(imag.residual < 1e-10);
    const auto real = hecke::pin_hecke_real();
    CHECK(real.power_of_two == hecke::kHeckeRealPowerOfTwo);
    CHECK_FALSE(real.labels_distinguishable);
    CHECK(real.residual < 1e-10);
}

TEST_CASE("imaginary quadratic routes agree") {
    for (std::int64_t d = -3; d >= -200; --d) {
        if (!hecke::is_fundamental_discriminant(d)) {
            continue;
        }
        const auto D = Discriminant::make(d);
        const auto g = hecke::class_group(D);
        for (int chi = 0; chi < g.h; ++chi) {
            for (Complex s : {Complex(2.0), Complex(2.0, 3.0)}) {
                const Complex hecke_value = hecke::lk_hecke_imag(D, chi, s).value;
                const Complex direct_value = hecke::lk_direct(D, chi, s).value;
                INFO("D = " << d << " chi = " << chi << " s = " << s.real() << "+" << s.imag() << "i");
                CHECK(rel(hecke_value, direct_value) < 1e-8);
            }
        }
    }
}

TEST_CASE("real quadratic routes agree") {
    for (std::int64_t d : {5, 8, 13, 17, 21}) {
        const auto D = Discriminant::make(d);
        CHECK(rel(hecke::lk_hecke_real(D, 0, 2.0).value, hecke::lk_direct(D, 0, 2.0).value) < 1e-8);
    }
    const Complex v5 = hecke::lk_hecke_real(Discriminant::make(5), 0, 2.0).value;
    // L(2, chi_5) = 4 pi^2 / (25 sqrt 5).
    CHECK(std::abs(v5 - kZeta2 * 4.0 * kPi * kPi / (25.0 * std::sqrt(5.0))) < 1e-6 * std::abs(v5));
    // A real field with h = 2.
    const auto d40 = Discriminant::make(40);
    for (int chi = 0; chi < 2; ++chi) {
        CHECK(rel(hecke::lk_hecke_real(d40, chi, 2.0).value, hecke::lk_direct(d40, chi, 2.0).value) < 1e-8);
    }
    const auto d5 = Discriminant::make(5);
    const Complex up = hecke::lk_hecke_real(d5, 0, Complex(0.5, 3.0)).value;
    const Complex down = hecke::lk_hecke_real(d5, 0, Complex(0.5, -3.0)).value;
    CHECK(std::isfinite(std::abs(up)));
    CHECK(rel(down, std::conj(up)) < 1e-9);
    CHECK_THROWS_AS(hecke::lk_hecke_real(Discriminant::make(-23), 0, 2.0), hecke::DomainError);
}

TEST_CASE("critical line smoke bound") {
    const Complex v = hecke::lk_hecke_imag(Discriminant::make(-23), 0, Complex(0.5, 5.0)).value;
    const double bound = 10.0 * std::pow(23.0, 0.25) * std::cbrt(6.0) * std::pow(std::log(23.0 * 6.0), 2.0);
    CHECK(std::isfinite(std::abs(v)));
    CHECK(std::abs(v) <= bound);
}

TEST_CASE("genus factorization") {
    const auto d15 = Discriminant::make(-15);
    const auto at2 = hecke::genus_check(d15, 5, -3, 2.0);
    CHECK(rel(at2.lhs, at2.rhs) < 1e-6);
    CHECK(at2.char_index != 0);
    const auto crit = hecke::genus_check(d15, 5, -3, Complex(0.5, 1.0));
    CHECK(std::abs(crit.lhs - crit.rhs) < 1e-5 * std::max(1.0, std::abs(crit.rhs)));
    struct Pair {
        std::int64_t D, d1, d2;
    };
    for (const Pair& p : {Pair{-15, 5, -3}, Pair{-15, -3, 5}, Pair{-20, 5, -4}, Pair{-20, -4, 5}, Pair{-24, 8, -3},
                          Pair{-24, -3, 8}}) {
        for (double t : {1.0, 4.0, 9.5}) {
            const auto g = hecke::genus_check(Discriminant::make(p.D), p.d1, p.d2, Complex(0.5, t));
            INFO("D = " << p.D << " t = " << t);
            CHECK(std::abs(g.lhs - g.rhs) < 1e-5 * std::max(1.0, std::abs(g.rhs)));
        }
    }
    CHECK_THROWS_AS(hecke::genus_check(Discriminant::make(-4), 1, -4, 2.0), hecke::DomainError);
    CHECK_THROWS_AS(hecke::genus_check(d15, 3, -5, 2.0), hecke::DomainError);
}

TEST_CASE("conjugation symmetry") {
    for (std::int64_t d : {-23, -47, -104}) {
        const auto D = Discriminant::make(d);
        const auto g = hecke::class_group(D);
        for (int chi = 0; chi < g.h; ++chi) {
            const int bar = conjugate_index(g, chi);
            REQUIRE(bar >= 0);
            for (Complex s : {Complex(2.0, 3.0), Complex(0.5, 7.0), Complex(0.75, 2.0)}) {
                const Complex up = hecke::lk_hecke_imag(D, chi, s).value;
                const Complex down = hecke::lk_hecke_imag(D, bar, std::conj(s)).value;
                CHECK(std::abs(down - std::conj(up)) < 1e-9 * std::max(1.0, std::abs(up)));
            }
        }
    }
}

TEST_CASE("Euler product at s = 3") {
    for (std::int64_t d : {-23, -84, 5, 40}) {
        const auto D = Discriminant::make(d);
        const auto g = hecke::class_group(D);
        for (int chi = 0; chi < g.h; ++chi) {
            const Complex product = hecke::lk_euler_product(g, chi, 3.0, 100'000);
            CHECK(rel(product, hecke::lk_direct(D, chi, 3.0).value) < 1e-6);
        }
    }
}

TEST_CASE("second moment identity") {
    const auto m23 = hecke::second_moment(Discriminant::make(-23), 1.0);
    CHECK(m23.direct_route > 0.0);
    CHECK(std::abs(m23.direct_route - m23.orthogonality_route) < 1e-8 * m23.direct_route);
    const auto m4 = hecke::second_moment(Discriminant::make(-4), 2.0);
    CHECK(std::abs(m4.direct_route - m4.orthogonality_route) < 1e-8 * m4.direct_route);
    for (std::int64_t d : {-23, -47, -71, -119}) {
        for (double t : {1.0, 5.0, 20.0}) {
            const auto m = hecke::second_moment(Discriminant::make(d), t);
            const double scale = std::sqrt(std::abs(static_cast<double>(d))) * std::pow(1.0 + t, 2.0 / 3.0);
            CHECK(m.direct_route / scale <= 50.0);
        }
    }
    CHECK_THROWS_AS(hecke::second_moment(Discriminant::make(-23), 0.0), hecke::PoleError);
}
