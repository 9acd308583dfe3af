#pragma once

#include "anidecay/field.hpp"
#include "anidecay/solver.hpp"
#include "anidecay/spectral_ops.hpp"

#include <utility>

namespace anidecay {

/// Pressure from the divergence of the advection term:
///   phat(k) = - sum_{j,m} k_j k_m (v^j v^m)^(k) / |k|^2,  zero mode 0.
/// Products are the dealiased pseudo-spectral ones, so the mode-wise identity
/// -P(v.grad v) = -(v.grad v)^ - i k phat holds to round-off.
SpectralScalarField pressure_field(const SpectralVectorField& v);
SpectralScalarField pressure_from_products(const Grid3& g,
                                           const std::array<SpectralScalarField, 6>& w);

/// Forcing kernels of the v^3 Duhamel formula:
///   F1 = -i |k|^{-2} |k_h|^2 sum_j k_j (v^j v^3)^
///   F2 =  i k_3 |k|^{-2} sum_j sum_{l<=2} k_j k_l (v^j v^l)^
/// Their sum equals -(v.grad v^3 + d3 p)^ mode by mode.
std::pair<SpectralScalarField, SpectralScalarField> duhamel_kernels(const SpectralVectorField& v);
void duhamel_kernels_from_products(const Grid3& g, const std::array<SpectralScalarField, 6>& w,
                                   SpectralScalarField& f1, SpectralScalarField& f2);

/// v^3(t) split into heat-semigroup evolution of the data plus the two
/// nonlinear Duhamel integrals, with the reconstruction residual
/// ||v3_l + v3_n1 + v3_n2 - v^3(t)||_{L2} / ||v^3(t)||_{L2}.
struct DuhamelSplit {
  SpectralScalarField v3_l;
  SpectralScalarField v3_n1;
  SpectralScalarField v3_n2;
  double residual = 0.0;
};

/// Trapezoid quadrature of the Duhamel integrals over the stored snapshots,
/// with the semigroup factor evaluated exactly at the nodes. t must be a
/// snapshot time; throws when the snapshot set is too sparse (the message
/// carries the required cadence estimate).
DuhamelSplit reconstruct_v3(const TrajectoryRecord& record, double t);

} // namespace anidecay
