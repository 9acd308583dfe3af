#pragma once

#include "anidecay/field.hpp"
#include "anidecay/norms.hpp"

#include <cstdint>

namespace anidecay {

/// Spectral envelope for random divergence-free data:
///   |vhat(k)| = amplitude * |k_h|^{a_h} * |k_3|^{b_v} * exp(-|k|^2/(2 sigma^2))
/// on the dealias band, identically zero on the k_h = 0 and k_3 = 0 planes
/// and at the zero mode. Phases are random under a fixed seed; the coefficient
/// modulus is deterministic, so all norms of the data depend only on the grid
/// and the envelope.
struct SpectralEnvelope {
  double a_h = 0.0;
  double b_v = 1.0;
  double sigma = 1.0;
  double amplitude = 1.0;
  std::uint64_t seed = 1;
};

struct GeneratedData {
  SpectralVectorField field;
  InitialDataReport report;
};

/// Draws random phases on a fundamental half-space, mirrors them to enforce
/// Hermitian symmetry, and polarizes each coefficient orthogonally to k so
/// the field is divergence-free by construction. Requires a_h > s - 1 (the
/// H^{-s,0} membership gate for the horizontal envelope).
GeneratedData generate(const SpectralEnvelope& env, const Grid3& grid, double s, double s1);

/// Scalar multiple of v0 with B^{0,1/2} norm equal to target_c0 (exact by
/// homogeneity). Throws on zero input.
SpectralVectorField rescale_to_smallness(const SpectralVectorField& v0, double target_c0);

/// The scaling v0 -> lambda v0(lambda x) realized as exact lattice
/// re-indexing: identical mode slots, box lengths divided by lambda,
/// coefficients multiplied by lambda. lambda must be a power of two.
SpectralVectorField scaling_transform(const SpectralVectorField& v0, double lambda);

} // namespace anidecay
