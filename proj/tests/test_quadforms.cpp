#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "doctest.h"
#include "hecke/arith.hpp"
#include "hecke/errors.hpp"
#include "hecke/modgroup.hpp"
#include "hecke/quadforms.hpp"

using hecke::ClassGroupData;
using hecke::Discriminant;
using hecke::QuadraticForm;

namespace {

std::vector<std::int64_t> fundamental_discs(std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> out;
    for (std::int64_t d = lo; d <= hi; ++d) {
        if (hecke::is_fundamental_discriminant(d)) {
            out.push_back(d);
        }
    }
    return out;
}

void check_group_axioms(const ClassGroupData& g) {
    const auto h = static_cast<std::int32_t>(g.h);
    REQUIRE(static_cast<std::int64_t>(g.reduced_forms.size()) == g.h);
    for (std::int32_t i = 0; i < h; ++i) {
        REQUIRE(g.mul(0, i) == i);
        REQUIRE(g.mul(i, 0) == i);
        bool has_inverse = false;
        for (std::int32_t j = 0; j < h; ++j) {
            REQUIRE(g.mul(i, j) == g.mul(j, i));
            has_inverse = has_inverse || g.mul(i, j) == 0;
            for (std::int32_t k = 0; k < h; ++k) {
                REQUIRE(g.mul(g.mul(i, j), k) == g.mul(i, g.mul(j, k)));
            }
        }
        REQUIRE(has_inverse);
    }
}

void check_characters(const ClassGroupData& g) {
    const auto h = static_cast<std::size_t>(g.h);
    REQUIRE(g.characters.size() == h);
    for (const auto& chi : g.characters) {
        for (std::size_t i = 0; i < h; ++i) {
            for (std::size_t j = 0; j < h; ++j) {
                const auto ij = static_cast<std::size_t>(g.mul(static_cast<std::int32_t>(i), static_cast<std::int32_t>(j)));
                REQUIRE(std::abs(chi[ij] - chi[i] * chi[j]) < 1e-12);
            }
        }
    }
    for (std::size_t a = 0; a < h; ++a) {
        for (std::size_t b = 0; b < h; ++b) {
            hecke::Complex sum = 0.0;
            for (const auto& chi : g.characters) {
                sum += chi[a] * std::conj(chi[b]);
            }
            const double expected = a == b ? static_cast<double>(h) : 0.0;
            REQUIRE(std::abs(sum - expected) < 1e-12 * std::max<double>(1.0, static_cast<double>(h)));
        }
    }
}

struct CacheDirGuard {
    std::filesystem::path dir;
    CacheDirGuard() : dir(std::filesystem::temp_directory_path() / "hecke-test-quadforms") {
        std::filesystem::remove_all(dir);
        hecke::set_cache_directory(dir);
    }
    ~CacheDirGuard() { std::filesystem::remove_all(dir); }
};

}  // namespace

TEST_CASE("discriminants") {
    CHECK(Discriminant::make(-23).fundamental);
    CHECK(Discriminant::make(-4).fundamental);
    CHECK(Discriminant::make(8).fundamental);
    CHECK_FALSE(Discriminant::make(-16).fundamental);
    CHECK_FALSE(Discriminant::make(12 * 4).fundamental);
    CHECK_THROWS_AS(Discriminant::make(-5), hecke::DomainError);
    CHECK_THROWS_AS(Discriminant::make(0), hecke::DomainError);
    CHECK_THROWS_AS(Discriminant::fundamental_only(-12 * 4), hecke::DomainError);
}

TEST_CASE("definite reduction examples") {
    CHECK(hecke::reduce_definite({1, 0, 1}).first == QuadraticForm{1, 0, 1});
    CHECK(hecke::reduce_definite({1, 1, 6}).first == QuadraticForm{1, 1, 6});
    const auto [f, g] = hecke::reduce_definite({6, 5, 2});
    CHECK(f == QuadraticForm{2, -1, 3});
    CHECK(g.determinant() == 1);
    CHECK(hecke::transform({6, 5, 2}, g) == f);
    CHECK_THROWS_AS(hecke::reduce_definite({1, 3, 1}), hecke::DomainError);
}

TEST_CASE("reduction preserves discriminant and is realized by its word") {
    for (std::int64_t a = 1; a <= 30; ++a) {
        for (std::int64_t b = -40; b <= 40; ++b) {
            for (std::int64_t c = 1; c <= 30; ++c) {
                const QuadraticForm f{a, b, c};
                if (f.disc() >= 0) {
                    continue;
                }
                const auto [r, g] = hecke::reduce_definite(f);
                REQUIRE(hecke::is_reduced_definite(r));
                REQUIRE(r.disc() == f.disc());
                REQUIRE(hecke::transform(f, g) == r);
            }
        }
    }
}

TEST_CASE("reduced form enumeration") {
    CHECK(hecke::enumerate_reduced(Discriminant::make(-4)) == std::vector<QuadraticForm>{{1, 0, 1}});
    CHECK(hecke::enumerate_reduced(Discriminant::make(-3)) == std::vector<QuadraticForm>{{1, 1, 1}});
    CHECK(hecke::enumerate_reduced(Discriminant::make(-23)) ==
          std::vector<QuadraticForm>{{1, 1, 6}, {2, -1, 3}, {2, 1, 3}});
    CHECK(hecke::enumerate_reduced(Discriminant::make(-15)) == std::vector<QuadraticForm>{{1, 1, 4}, {2, 1, 2}});
    CHECK(hecke::enumerate_reduced(Discriminant::make(-163)).size() == 1);
    CHECK(hecke::enumerate_reduced(Discriminant::make(-71)).size() == 7);
    CHECK_THROWS_AS(hecke::enumerate_reduced(Discriminant::make(5)), hecke::DomainError);
}

TEST_CASE("rho examples") {
    CHECK(hecke::rho(Discriminant::make(-23), 1) == 1);
    CHECK(hecke::rho(Discriminant::make(-7), 1) == 1);
    CHECK(hecke::rho(Discriminant::make(-23), 2) == 2);
    CHECK(hecke::rho(Discriminant::make(-4), 2) == 1);
}

TEST_CASE("rho is multiplicative and follows the prime-power formula") {
    for (std::int64_t D : fundamental_discs(-500, -3)) {
        const auto d = Discriminant::make(D);
        std::vector<std::int64_t> r(201);
        for (std::int64_t a = 1; a <= 200; ++a) {
            r[static_cast<std::size_t>(a)] = hecke::rho(d, a);
        }
        for (std::int64_t m = 1; m <= 200; ++m) {
            for (std::int64_t n = 1; m * n <= 200; ++n) {
                if (std::gcd(m, n) == 1) {
                    REQUIRE(r[static_cast<std::size_t>(m * n)] ==
                            r[static_cast<std::size_t>(m)] * r[static_cast<std::size_t>(n)]);
                }
            }
        }
        for (std::int64_t p : hecke::primes_up_to(200)) {
            std::int64_t q = p;
            for (int alpha = 1; q <= 200; ++alpha, q *= p) {
                const int chi = hecke::kronecker_chi(D, p);
                const std::int64_t expected = chi != 0 ? 1 + chi : (alpha == 1 ? 1 : 0);
                REQUIRE(r[static_cast<std::size_t>(q)] == expected);
            }
        }
    }
}

TEST_CASE("composition examples") {
    CHECK(hecke::compose({1, 1, 6}, {2, 1, 3}) == QuadraticForm{2, 1, 3});
    CHECK(hecke::compose({2, 1, 3}, {2, -1, 3}) == QuadraticForm{1, 1, 6});
    CHECK(hecke::compose({2, 1, 3}, {2, 1, 3}) == QuadraticForm{2, -1, 3});
    CHECK_THROWS_AS(hecke::compose({1, 1, 6}, {1, 0, 1}), hecke::DomainError);
}

TEST_CASE("class group examples") {
    CacheDirGuard guard;
    const auto g23 = hecke::class_group(Discriminant::make(-23));
    CHECK(g23.h == 3);
    CHECK(g23.omega == 2);
    REQUIRE(g23.cyclic_decomposition.size() == 1);
    CHECK(g23.cyclic_decomposition[0].second == 3);
    for (const auto& chi : g23.characters) {
        for (const auto& v : chi) {
            CHECK(std::abs(v * v * v - 1.0) < 1e-12);
        }
    }
    CHECK(hecke::class_group(Discriminant::make(-15)).h == 2);
    CHECK(hecke::class_group(Discriminant::make(-4)).omega == 4);
    CHECK(hecke::class_group(Discriminant::make(-3)).omega == 6);
    const auto g5 = hecke::class_group(Discriminant::make(5));
    CHECK(g5.h == 1);
    CHECK(std::abs(g5.unit_log - 0.4812118250596034) < 1e-12);
    CHECK_THROWS_AS(hecke::class_group(Discriminant::make(-16)), hecke::DomainError);
    CHECK_THROWS_AS(hecke::class_group(Discriminant::make(-10'000'019)), hecke::ResourceError);
}

TEST_CASE("non-cyclic class group decomposes with full character table") {
    // D = -420 has class group (Z/2)^3.
    const auto g = hecke::compute_class_group(Discriminant::make(-420));
    CHECK(g.h == 8);
    CHECK(g.cyclic_decomposition.size() == 3);
    check_group_axioms(g);
    check_characters(g);
    // Invariant factors come out in divisibility order.
    const auto g2 = hecke::compute_class_group(Discriminant::make(-2379));
    for (std::size_t j = 1; j < g2.cyclic_decomposition.size(); ++j) {
        CHECK(g2.cyclic_decomposition[j - 1].second % g2.cyclic_decomposition[j].second == 0);
    }
    check_group_axioms(g2);
    check_characters(g2);
}

TEST_CASE("group axioms and orthogonality for all |D| <= 2000") {
    int checked = 0;
    for (std::int64_t D : fundamental_discs(-2000, 2000)) {
        const auto g = hecke::compute_class_group(Discriminant::make(D));
        check_group_axioms(g);
        check_characters(g);
        ++checked;
    }
    CHECK(checked > 1000);
}

TEST_CASE("real quadratic class numbers") {
    // Wide class numbers of small real quadratic fields.
    const std::vector<std::pair<std::int64_t, std::int64_t>> known = {
        {5, 1}, {8, 1}, {12, 1}, {13, 1}, {40, 2}, {60, 2}, {65, 2}, {85, 2}, {229, 3}, {316, 3}, {321, 3}};
    for (const auto& [D, h] : known) {
        if (!hecke::is_fundamental_discriminant(D)) {
            continue;
        }
        INFO("D = " << D);
        CHECK(hecke::compute_class_group(Discriminant::make(D)).h == h);
    }
}

TEST_CASE("class_index is invariant under SL2 moves") {
    for (std::int64_t D : {-23, -71, -420, 40, 229, 316}) {
        const auto g = hecke::compute_class_group(Discriminant::make(D));
        for (std::size_t i = 0; i < g.reduced_forms.size(); ++i) {
            const auto f = g.reduced_forms[i];
            CHECK(hecke::class_index(g, f) == static_cast<std::int32_t>(i));
            const hecke::ModularWord w{2, 3, 1, 2};
            CHECK(hecke::class_index(g, hecke::transform(f, w)) == static_cast<std::int32_t>(i));
        }
    }
}

TEST_CASE("fundamental units") {
    const auto u5 = hecke::fundamental_unit(Discriminant::make(5));
    CHECK(std::abs(u5.unit_log - 0.4812118251) < 1e-10);
    CHECK(u5.norm == -1);
    REQUIRE(u5.pell_tu);
    CHECK(*u5.pell_tu == std::make_pair<std::int64_t, std::int64_t>(3, 1));
    const auto u8 = hecke::fundamental_unit(Discriminant::make(8));
    CHECK(std::abs(u8.unit_log - 0.8813735870) < 1e-10);
    CHECK(*u8.pell_tu == std::make_pair<std::int64_t, std::int64_t>(6, 2));
    const auto u13 = hecke::fundamental_unit(Discriminant::make(13));
    CHECK(std::abs(u13.unit_log - std::log((3.0 + std::sqrt(13.0)) / 2.0)) < 1e-12);
    CHECK(*u13.pell_tu == std::make_pair<std::int64_t, std::int64_t>(11, 3));
    const auto u12 = hecke::fundamental_unit(Discriminant::make(12));
    CHECK(u12.norm == 1);
    CHECK(std::abs(u12.unit_log - std::log(2.0 + std::sqrt(3.0))) < 1e-12);
    CHECK_THROWS_AS(hecke::fundamental_unit(Discriminant::make(-4)), hecke::DomainError);
}

TEST_CASE("pell solution matches the unit log") {
    for (std::int64_t D : fundamental_discs(5, 400)) {
        const auto u = hecke::fundamental_unit(Discriminant::make(D));
        if (!u.pell_tu) {
            continue;
        }
        const auto [t, uu] = *u.pell_tu;
        const double td = static_cast<double>(t), ud = static_cast<double>(uu);
        REQUIRE(static_cast<__int128>(t) * t - static_cast<__int128>(D) * uu * uu == 4);
        REQUIRE(std::abs(std::log((td + ud * std::sqrt(static_cast<double>(D))) / 2.0) - u.positive_log) <
                1e-9 * u.positive_log);
    }
}

TEST_CASE("heegner points") {
    const auto z = hecke::heegner_point({1, 0, 1});
    CHECK(std::abs(z.x) < 1e-15);
    CHECK(std::abs(z.y - 1.0) < 1e-15);
    const auto z2 = hecke::heegner_point({2, 1, 3});
    CHECK(std::abs(z2.x + 0.25) < 1e-15);
    CHECK(std::abs(z2.y - std::sqrt(23.0) / 4.0) < 1e-15);
    const auto z3 = hecke::heegner_point({1, 1, 6});
    CHECK(std::abs(z3.y - std::sqrt(23.0) / 2.0) < 1e-15);
    for (std::int64_t D : fundamental_discs(-3000, -3)) {
        for (const auto& f : hecke::enumerate_reduced(Discriminant::make(D))) {
            const auto p = hecke::heegner_point(f);
            REQUIRE(std::abs(hecke::invariant_height(p) - std::sqrt(static_cast<double>(-D)) / (2.0 * f.a)) < 1e-12);
        }
    }
    CHECK_THROWS_AS(hecke::heegner_point({1, 1, -1}), hecke::DomainError);
}

TEST_CASE("geodesic cycles") {
    const auto g = hecke::geodesic_cycle({1, 1, -1});
    CHECK(std::abs(g.center + 0.5) < 1e-15);
    CHECK(std::abs(g.radius - std::sqrt(5.0) / 2.0) < 1e-15);
    REQUIRE(g.automorph);
    CHECK(g.automorph->determinant() == 1);
    CHECK(hecke::transform({1, 1, -1}, *g.automorph) == QuadraticForm{1, 1, -1});
    CHECK(g.period_length > 0.0);
    CHECK(std::abs(g.period_length - 4.0 * 0.4812118250596034) < 1e-12);
    CHECK(std::abs(g.period_weight - 0.5) < 1e-15);
    for (std::int64_t D : {8, 13, 40, 229}) {
        const auto cls = hecke::compute_class_group(Discriminant::make(D));
        for (const auto& f : cls.reduced_forms) {
            const auto cyc = hecke::geodesic_cycle(f);
            REQUIRE(cyc.automorph);
            CHECK(hecke::transform(f, *cyc.automorph) == f);
        }
    }
    CHECK_THROWS_AS(hecke::geodesic_cycle({1, 0, 1}), hecke::DomainError);
}

TEST_CASE("cache round trip and corruption recovery") {
    CacheDirGuard guard;
    const auto d = Discriminant::make(-71);
    const auto fresh = hecke::class_group(d);
    const auto path = hecke::class_cache_path(-71);
    REQUIRE(std::filesystem::exists(path));
    const auto loaded = hecke::read_class_cache(path, -71);
    REQUIRE(loaded);
    CHECK(loaded->reduced_forms == fresh.reduced_forms);
    CHECK(loaded->composition_table == fresh.composition_table);
    CHECK(loaded->char_exponents == fresh.char_exponents);
    CHECK(loaded->cyclic_decomposition == fresh.cyclic_decomposition);
    {
        std::ofstream out(path, std::ios::trunc);
        out << "D -71\nh 7\nform 1 1 18\ntable\n0 1";
    }
    CHECK_FALSE(hecke::read_class_cache(path, -71));
    const auto rebuilt = hecke::class_group(d);
    CHECK(rebuilt.composition_table == fresh.composition_table);
    CHECK(hecke::read_class_cache(path, -71));
}
