#include <cmath>
#include <random>

#include "doctest.h"
#include "hecke/errors.hpp"
#include "hecke/modgroup.hpp"

using hecke::HalfPlanePoint;
using hecke::ModularWord;

namespace {

ModularWord random_word(std::mt19937_64& rng) {
    const ModularWord gens[] = {{1, 1, 0, 1}, {1, -1, 0, 1}, {0, -1, 1, 0}};
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_int_distribution<int> len(1, 10);
    ModularWord g = ModularWord::identity();
    const int n = len(rng);
    for (int k = 0; k < n; ++k) {
        g = gens[pick(rng)] * g;
    }
    return g;
}

HalfPlanePoint random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ux(-0.5, 0.5);
    std::uniform_real_distribution<double> uy(0.0, 3.0);
    const double x = ux(rng);
    return {x, std::sqrt(1.0 - x * x) + uy(rng), false};
}

}  // namespace

TEST_CASE("reduction examples") {
    auto [a, ga] = hecke::reduce_to_fundamental({0.0, 1.0});
    CHECK(a.x == doctest::Approx(0.0));
    CHECK(a.y == doctest::Approx(1.0));
    CHECK(ga == ModularWord::identity());

    auto [b, gb] = hecke::reduce_to_fundamental({5.3, 2.0});
    CHECK(b.x == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(b.y == doctest::Approx(2.0));
    CHECK(gb.determinant() == 1);

    auto [c, gc] = hecke::reduce_to_fundamental({0.0, 0.5});
    CHECK(std::abs(c.x) < 1e-15);
    CHECK(c.y == doctest::Approx(2.0));
    CHECK(c.reduced);
}

TEST_CASE("invariant height") {
    CHECK(hecke::invariant_height({0.0, 1.0}) == doctest::Approx(1.0));
    CHECK(hecke::invariant_height({0.0, 0.5}) == doctest::Approx(2.0));
    CHECK(hecke::invariant_height({-0.25, std::sqrt(23.0) / 4.0}) == doctest::Approx(std::sqrt(23.0) / 4.0).epsilon(1e-14));
    CHECK_THROWS_AS(hecke::invariant_height({0.0, 1e-13}), hecke::RangeError);
}

TEST_CASE("reduced output lies in the closure and the word reproduces it") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ux(-20.0, 20.0);
    std::uniform_real_distribution<double> ly(-3.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const HalfPlanePoint z{ux(rng), std::pow(10.0, ly(rng)), false};
        auto [w, g] = hecke::reduce_to_fundamental(z);
        CHECK(std::abs(w.x) <= 0.5 + 1e-12);
        CHECK(w.x * w.x + w.y * w.y >= 1.0 - 1e-12);
        CHECK(w.y >= std::sqrt(3.0) / 2.0 - 1e-12);
        CHECK(g.determinant() == 1);
        const HalfPlanePoint image = hecke::apply(g, z);
        CHECK(std::abs(image.x - w.x) <= 1e-10 * std::max(1.0, std::abs(w.x)));
        CHECK(std::abs(image.y - w.y) <= 1e-10 * w.y);
    }
}

TEST_CASE("idempotence and invariance under random words") {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 100; ++k) {
        const HalfPlanePoint z = random_point(rng);
        auto [once, g1] = hecke::reduce_to_fundamental(z);
        auto [twice, g2] = hecke::reduce_to_fundamental(once);
        CHECK(std::abs(once.x - twice.x) < 1e-12);
        CHECK(std::abs(once.y - twice.y) < 1e-12);

        const ModularWord g = random_word(rng);
        const HalfPlanePoint moved = hecke::apply(g, z);
        CHECK(std::abs(hecke::invariant_height(moved) - hecke::invariant_height(z)) < 1e-9);
    }
}
