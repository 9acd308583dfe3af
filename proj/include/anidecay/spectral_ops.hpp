#pragma once

#include "anidecay/field.hpp"

#include <array>

namespace anidecay {

/// Leray projection I - k k^T/|k|^2 applied per mode. The zero mode is pinned
/// to 0 (the projector is singular there); Nyquist slots use the same reduced
/// wavenumbers as the derivative ops, so div(leray_project(v)) vanishes
/// identically in the discrete sense.
SpectralVectorField leray_project(const SpectralVectorField& v);

/// 2/3-rule mask: zero every mode with |m_i| > (N_i - 1)/3 on any axis.
void dealias_inplace(SpectralScalarField& a);
void dealias_inplace(SpectralVectorField& v);
bool inside_dealias_band(const Grid3& g, int i1, int i2, int i3);

/// Pointwise product computed pseudo-spectrally: inverse transforms, product
/// on the grid, forward transform, 2/3 truncation. Exact convolution on the
/// retained band when both factors are band-limited.
SpectralScalarField spectral_product(const SpectralScalarField& a, const SpectralScalarField& b);

/// Dealiased tensor products (v^j v^k)^ for j <= k, order 11,22,33,12,13,23.
/// One shared set of inverse transforms feeds all six products.
std::array<SpectralScalarField, 6> velocity_products(const SpectralVectorField& v);

/// Index into the velocity_products array for (j,k), 0-based axes.
int product_index(int j, int k);

/// The Leray-projected advection term -P(v . grad v), computed in divergence
/// form: products in physical space, derivatives and projection in frequency,
/// 2/3 truncation in between. Requires div v = 0. Output is divergence-free
/// with zero mean mode.
SpectralVectorField nonlinear_term(const SpectralVectorField& v);

/// Same term assembled from precomputed products (shared with the Duhamel
/// kernels so both sides of identity checks use identical arithmetic).
SpectralVectorField nonlinear_term_from_products(const Grid3& g,
                                                 const std::array<SpectralScalarField, 6>& w);

/// Re(< a , b >_{L2}) = volume * Re sum ahat conj(bhat) (Plancherel).
double inner_product_real(const SpectralScalarField& a, const SpectralScalarField& b);
double inner_product_real(const SpectralVectorField& a, const SpectralVectorField& b);

} // namespace anidecay
