#include "anidecay/paraproduct.hpp"

#include "anidecay/errors.hpp"
#include "anidecay/fft.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace anidecay {

namespace {

// Physical-space pointwise product, no dealiasing: the Bony reconstruction is
// a pointwise bilinear identity, so every piece must use the plain grid
// product that also defines the reference fg.
SpectralScalarField grid_product(const SpectralScalarField& a, const SpectralScalarField& b) {
  const FourierTransform& fft = fft_for(a.grid);
  RealField ra = fft.inverse(a);
  RealField rb = fft.inverse(b);
  RealField prod(a.grid);
  par::for_range(static_cast<std::int64_t>(prod.v.size()), [&](std::int64_t i) {
    prod.v[static_cast<std::size_t>(i)] =
        ra.v[static_cast<std::size_t>(i)] * rb.v[static_cast<std::size_t>(i)];
  });
  return fft.forward(prod);
}

} // namespace

BonySplit bony_decompose(const SpectralScalarField& f, const SpectralScalarField& g,
                         const DyadicFilterBank& bank) {
  if (!(f.grid == g.grid)) throw DimensionError("bony_decompose: grids differ");
  if (!(f.grid == bank.grid())) throw DimensionError("bony_decompose: bank grid differs");

  const int jm = bank.j_min(), jM = bank.j_max();
  const Grid3& grid = f.grid;

  // Precompute the dyadic pieces once.
  SpectralScalarField f_low = dyadic_block(f, bank, BlockKind::SLow, jm);
  SpectralScalarField g_low = dyadic_block(g, bank, BlockKind::SLow, jm);
  std::vector<SpectralScalarField> fb, gb;
  fb.reserve(static_cast<std::size_t>(jM - jm + 1));
  gb.reserve(static_cast<std::size_t>(jM - jm + 1));
  for (int j = jm; j <= jM; ++j) {
    fb.push_back(dyadic_block(f, bank, BlockKind::Delta, j));
    gb.push_back(dyadic_block(g, bank, BlockKind::Delta, j));
  }
  const auto piece = [&](const std::vector<SpectralScalarField>& v, int j) -> const SpectralScalarField& {
    return v[static_cast<std::size_t>(j - jm)];
  };

  BonySplit out{SpectralScalarField(grid), SpectralScalarField(grid), SpectralScalarField(grid),
                SpectralScalarField(grid)};

  // Running low-pass S_{k-1} = base + sum_{j <= k-2} Delta_j, lagged one
  // block behind k (exact telescoping of the chi identity).
  SpectralScalarField sf = f_low;
  SpectralScalarField sg = g_low;
  for (int k = jm + 1; k <= jM; ++k) {
    if (k > jm + 1) {
      sf += piece(fb, k - 2);
      sg += piece(gb, k - 2);
    }
    out.t_fg += grid_product(sf, piece(gb, k));
    out.t_gf += grid_product(sg, piece(fb, k));
  }

  for (int k = jm; k <= jM; ++k)
    for (int kp = std::max(jm, k - 1); kp <= std::min(jM, k + 1); ++kp)
      out.remainder += grid_product(piece(fb, k), piece(gb, kp));

  out.low_block = grid_product(f_low, g_low);
  out.low_block += grid_product(f_low, piece(gb, jm));
  out.low_block += grid_product(piece(fb, jm), g_low);
  return out;
}

SpectralScalarField dyadic_commutator(int j, const SpectralScalarField& f,
                                      const SpectralScalarField& g, const DyadicFilterBank& bank) {
  if (!(f.grid == g.grid)) throw DimensionError("dyadic_commutator: grids differ");
  SpectralScalarField t1 = dyadic_block(grid_product(f, g), bank, BlockKind::Delta, j);
  SpectralScalarField t2 = grid_product(f, dyadic_block(g, bank, BlockKind::Delta, j));
  return t1 - t2;
}

BernsteinReport bernstein_check(const SpectralScalarField& a, const DyadicFilterBank& bank, int j,
                                int order) {
  if (order < 0) throw ParameterError("bernstein_check: order must be >= 0");
  const Grid3& g = a.grid;
  if (!(g == bank.grid())) throw DimensionError("bernstein_check: bank grid differs");

  const double lo = 0.75 * std::ldexp(1.0, j);
  const double hi = (8.0 / 3.0) * std::ldexp(1.0, j);
  const double amax = a.max_abs();
  if (amax == 0.0) throw ParameterError("bernstein_check: field is zero");

  const int nh = g.n_h, nv = g.n_v;
  double sum_base = 0.0, sum_deriv = 0.0;
  for (int i3 = 0; i3 < nv; ++i3) {
    for (int i2 = 0; i2 < nh; ++i2) {
      for (int i1 = 0; i1 < nh; ++i1) {
        const double m2 = std::norm(a.at(i1, i2, i3));
        if (m2 == 0.0) continue;
        const double r = bank.radius(i1, i2, i3);
        if ((r < lo || r > hi) && std::sqrt(m2) > 1e-13 * amax)
          throw ParameterError("bernstein_check: field not banded; mass at radius " +
                               std::to_string(r) + " outside [" + std::to_string(lo) + ", " +
                               std::to_string(hi) + "]");
        sum_base += m2;
        sum_deriv += m2 * std::pow(r * r, order);
      }
    }
  }
  BernsteinReport rep{};
  rep.ratio = std::sqrt(sum_deriv / sum_base);
  rep.lower = std::pow(lo, order);
  rep.upper = std::pow(hi, order);
  rep.inside = rep.ratio >= rep.lower && rep.ratio <= rep.upper;
  return rep;
}

} // namespace anidecay
