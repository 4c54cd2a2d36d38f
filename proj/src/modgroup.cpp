#include "hecke/modgroup.hpp"

#include <cmath>
#include <complex>

#include "hecke/errors.hpp"

namespace hecke {

ModularWord operator*(const ModularWord& a, const ModularWord& b) {
    return {a.p * b.p + a.q * b.r, a.p * b.q + a.q * b.s, a.r * b.p + a.s * b.r, a.r * b.q + a.s * b.s};
}

HalfPlanePoint apply(const ModularWord& g, const HalfPlanePoint& z) {
    const std::complex<double> w(z.x, z.y);
    const std::complex<double> image = (static_cast<double>(g.p) * w + static_cast<double>(g.q)) /
                                       (static_cast<double>(g.r) * w + static_cast<double>(g.s));
    return {image.real(), image.imag(), false};
}

std::pair<HalfPlanePoint, ModularWord> reduce_to_fundamental(const HalfPlanePoint& z) {
    if (!(z.y > kMinHeight) || !std::isfinite(z.x) || !std::isfinite(z.y)) {
        throw RangeError("reduce_to_fundamental: y must exceed 1e-12");
    }
    double x = z.x;
    double y = z.y;
    ModularWord word = ModularWord::identity();
    for (int step = 0; step < kMaxReductionSteps; ++step) {
        const double shift = std::nearbyint(x);
        if (shift != 0.0 && std::abs(x) > 0.5) {
            x -= shift;
            const auto n = static_cast<std::int64_t>(shift);
            word = ModularWord{1, -n, 0, 1} * word;
        }
        const double norm = x * x + y * y;
        if (norm >= 1.0 - kFundamentalTol) {
            return {HalfPlanePoint{x, y, true}, word};
        }
        // z -> -1/z strictly increases y.
        x = -x / norm;
        y = y / norm;
        word = ModularWord{0, -1, 1, 0} * word;
    }
    throw Error("reduce_to_fundamental: iteration cap exceeded");
}

double invariant_height(const HalfPlanePoint& z) {
    return reduce_to_fundamental(z).first.y;
}

}  // namespace hecke
