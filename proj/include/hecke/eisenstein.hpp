#pragma once

// The real-analytic Eisenstein series for SL(2, Z), evaluated from its
// Fourier expansion.
//
// Normalization: E(z, s) = sum over all (c, d) coprime of y^s / |cz + d|^{2s}
// (both signs of (c, d)), so that zeta(2s) E(z, s) = y^s sum' |mz + n|^{-2s}
// holds exactly. With this convention
//
//   E(z, s) = 2 y^s + 2 phi(s) y^{1-s}
//           + 8 sqrt(y) / (pi^{-s} Gamma(s) zeta(2s))
//             * sum_{n >= 1} tau_{s-1/2}(n) K_{s-1/2}(2 pi n y) cos(2 pi n x).

#include <cstdint>
#include <vector>

#include "hecke/modgroup.hpp"
#include "hecke/numerics.hpp"

namespace hecke {

struct EisensteinValue {
    HalfPlanePoint z;
    Complex s;
    Complex value;
    /// Upper bound on the neglected Fourier tail.
    double tail_bound = 0.0;
};

/// phi(s) = Gamma_R(2s - 1) zeta(2s - 1) / (Gamma_R(2s) zeta(2s)).
/// PoleError at s = 1. At s = 1/2 the removable singularity gives -1.
Complex scattering_phi(Complex s);

/// Smallest N for which the Fourier tail beyond N at s = 1/2 + it is below tol.
std::int64_t truncation_length(double y, double t, double tol = kDefaultTol);

/// The Fourier coefficients of E at fixed height y and fixed s: E(x + iy, s) =
/// constant + sum_n coeffs[n-1] cos(2 pi n x) + (tail <= tail_bound). Lets a
/// scan over x reuse one set of Bessel evaluations.
struct EisensteinRow {
    Complex s;
    double y = 1.0;
    Complex constant;
    std::vector<Complex> coeffs;
    double tail_bound = 0.0;

    Complex at(double x) const;
    /// The non-constant part alone (no cancellation against the constant term).
    Complex fourier_part(double x) const;
};

/// Row data for height y (no reduction; y >= sqrt(3)/2 - 1e-6 is required so
/// that the truncation stays short). At least min_terms coefficients are kept
/// even when the tolerance would drop them.
EisensteinRow eisenstein_row(double y, Complex s, double tol = kDefaultTol, std::int64_t min_terms = 0);

/// E(z, s) with z reduced internally. Envelope: 0.4 <= Re s <= 5, |Im s| <= 500.
/// PoleError for |s - 1| < 0.05, RangeError outside the envelope.
EisensteinValue eisenstein(const HalfPlanePoint& z, Complex s, double tol = kDefaultTol);

}  // namespace hecke
