#pragma once

#include "anidecay/field.hpp"
#include "anidecay/filter_bank.hpp"

#include <array>

namespace anidecay {

/// Para-differential split of a product fg against one dyadic direction:
/// fg = t_fg + t_gf + remainder + low_block, exactly (every dyadic piece pair
/// of the truncated torus family is counted once).
struct BonySplit {
  SpectralScalarField t_fg;      ///< sum_k S_{k-1} f . Delta_k g
  SpectralScalarField t_gf;      ///< sum_k S_{k-1} g . Delta_k f
  SpectralScalarField remainder; ///< sum_{|k-k'|<=1} Delta_k f . Delta_k' g
  SpectralScalarField low_block; ///< pieces touching the inhomogeneous base
};

BonySplit bony_decompose(const SpectralScalarField& f, const SpectralScalarField& g,
                         const DyadicFilterBank& bank);

/// [Delta_j; f] g = Delta_j(fg) - f Delta_j(g); zero when f is constant.
SpectralScalarField dyadic_commutator(int j, const SpectralScalarField& f,
                                      const SpectralScalarField& g, const DyadicFilterBank& bank);

/// Bernstein band report: the |D|^order multiplier of the bank direction on a
/// field whose spectrum lies in the closed annulus 2^j [3/4, 8/3] has
/// L2 ratio inside [ (3/4 2^j)^order, (8/3 2^j)^order ] by Plancherel.
struct BernsteinReport {
  double ratio;
  double lower;
  double upper;
  bool inside;
};

/// Throws if a is zero or not supported in the band.
BernsteinReport bernstein_check(const SpectralScalarField& a, const DyadicFilterBank& bank, int j,
                                int order);

} // namespace anidecay
