#pragma once

// Upper half-plane points and reduction to the standard fundamental domain
// of SL(2, Z).

#include <cstdint>
#include <utility>

namespace hecke {

struct HalfPlanePoint {
    double x = 0.0;
    double y = 1.0;
    bool reduced = false;
};

/// Integer matrix (p q; r s) with p s - q r = 1, acting by z -> (p z + q) / (r z + s).
struct ModularWord {
    std::int64_t p = 1;
    std::int64_t q = 0;
    std::int64_t r = 0;
    std::int64_t s = 1;

    static ModularWord identity() { return {}; }
    std::int64_t determinant() const { return p * s - q * r; }
    bool operator==(const ModularWord&) const = default;
};

ModularWord operator*(const ModularWord& a, const ModularWord& b);

/// Mobius action of an integer matrix on a point (any sign of y is preserved
/// when the determinant is 1).
HalfPlanePoint apply(const ModularWord& g, const HalfPlanePoint& z);

inline constexpr double kFundamentalTol = 1e-12;
inline constexpr double kMinHeight = 1e-12;
inline constexpr int kMaxReductionSteps = 10'000;

/// Moves z into the closure of {|x| <= 1/2, |z| >= 1} (up to kFundamentalTol).
/// Returns the reduced point and the matrix g with g z = reduced.
/// Throws RangeError for y <= kMinHeight.
std::pair<HalfPlanePoint, ModularWord> reduce_to_fundamental(const HalfPlanePoint& z);

/// y(z): imaginary part of the reduced representative.
double invariant_height(const HalfPlanePoint& z);

}  // namespace hecke
