#include "anidecay/filter_bank.hpp"

#include "anidecay/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace anidecay {

namespace {

// C^inf bump on (0,1), zero outside.
double unit_bump(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return std::exp(-1.0 / (x * (1.0 - x)));
}

constexpr double kSuppLo = 0.75;      // 3/4
constexpr double kSuppHi = 8.0 / 3.0; // 8/3

double theta(double tau) { return unit_bump((tau - kSuppLo) / (kSuppHi - kSuppLo)); }

// sum_{j in Z} theta(2^-j tau); at most three dyadic dilates are nonzero.
double theta_dyadic_sum(double tau) {
  const int j_lo = static_cast<int>(std::floor(std::log2(tau / kSuppHi))) - 1;
  const int j_hi = static_cast<int>(std::ceil(std::log2(tau / kSuppLo))) + 1;
  double s = 0.0;
  for (int j = j_lo; j <= j_hi; ++j) s += theta(std::ldexp(tau, -j));
  return s;
}

} // namespace

double dyadic_phi(double tau) {
  tau = std::abs(tau);
  if (tau <= kSuppLo || tau >= kSuppHi) return 0.0;
  return theta(tau) / theta_dyadic_sum(tau);
}

double dyadic_chi(double tau) {
  tau = std::abs(tau);
  if (tau <= kSuppLo) return 1.0;
  if (tau >= 4.0 / 3.0) return 0.0;
  // Only j = 0 of the j >= 0 family reaches below 4/3.
  return 1.0 - dyadic_phi(tau);
}

int max_feasible_block(const Grid3& grid, Direction dir) {
  // largest |k| on the axis family
  double k_max;
  if (dir == Direction::Vertical) {
    k_max = 2.0 * std::numbers::pi * (grid.n_v / 2) / grid.l_v;
  } else {
    const double k1 = 2.0 * std::numbers::pi * (grid.n_h / 2) / grid.l_h;
    k_max = std::sqrt(2.0) * k1;
  }
  // band j intersects the lattice iff 3/4 * 2^j <= k_max
  return static_cast<int>(std::floor(std::log2(k_max / kSuppLo)));
}

DyadicFilterBank::DyadicFilterBank(const Grid3& grid, Direction dir, int j_min, int j_max)
    : grid_(grid), dir_(dir), j_min_(j_min), j_max_(j_max) {
  if (j_min >= j_max) throw ParameterError("DyadicFilterBank: requires j_min < j_max");
  const int feasible = max_feasible_block(grid, dir);
  if (j_max > feasible)
    throw ParameterError("DyadicFilterBank: grid too coarse for requested bands; maximal feasible j_max is " +
                         std::to_string(feasible));

  const int nblocks = j_max - j_min + 1;
  tables_.resize(static_cast<std::size_t>(nblocks) + 1);

  const auto fill = [&](std::vector<double>& t, auto weight_of_radius) {
    if (dir_ == Direction::Vertical) {
      t.resize(static_cast<std::size_t>(grid_.n_v));
      for (int i3 = 0; i3 < grid_.n_v; ++i3)
        t[static_cast<std::size_t>(i3)] = weight_of_radius(std::abs(grid_.wavenumber(2, i3)));
    } else {
      t.resize(std::size_t(grid_.n_h) * grid_.n_h);
      for (int i2 = 0; i2 < grid_.n_h; ++i2) {
        const double k2 = grid_.wavenumber(1, i2);
        for (int i1 = 0; i1 < grid_.n_h; ++i1) {
          const double k1 = grid_.wavenumber(0, i1);
          t[std::size_t(i1) + std::size_t(grid_.n_h) * i2] =
              weight_of_radius(std::hypot(k1, k2));
        }
      }
    }
  };

  fill(tables_[0], [&](double r) { return dyadic_chi(std::ldexp(r, -j_min_)); });
  for (int j = j_min; j <= j_max; ++j)
    fill(tables_[static_cast<std::size_t>(j - j_min) + 1],
         [&](double r) { return dyadic_phi(std::ldexp(r, -j)); });
}

DyadicFilterBank DyadicFilterBank::covering(const Grid3& grid, Direction dir) {
  const double L = dir == Direction::Vertical ? grid.l_v : grid.l_h;
  const double k_min = 2.0 * std::numbers::pi / L;
  // low block below the smallest lattice scale; top block must still satisfy
  // k_max <= 3/2 * 2^j_max so that truncation at j_max loses nothing
  const int j_min = static_cast<int>(std::floor(std::log2(k_min))) - 1;
  const int feasible = max_feasible_block(grid, dir);
  return DyadicFilterBank(grid, dir, j_min, feasible);
}

const std::vector<double>& DyadicFilterBank::table(BlockKind kind, int j) const {
  if (!covers(j))
    throw ParameterError("DyadicFilterBank: block index " + std::to_string(j) +
                         " outside bank range [" + std::to_string(j_min_) + ", " +
                         std::to_string(j_max_) + "]");
  if (kind == BlockKind::SLow && j != j_min_)
    throw ParameterError("DyadicFilterBank: low block is tabulated at j_min only");
  return kind == BlockKind::SLow ? tables_[0] : tables_[static_cast<std::size_t>(j - j_min_) + 1];
}

const std::vector<double>& DyadicFilterBank::vertical_weights(BlockKind kind, int j) const {
  if (dir_ != Direction::Vertical)
    throw ParameterError("DyadicFilterBank: vertical_weights on a horizontal bank");
  return table(kind, j);
}

const std::vector<double>& DyadicFilterBank::horizontal_weights(BlockKind kind, int j) const {
  if (dir_ != Direction::Horizontal)
    throw ParameterError("DyadicFilterBank: horizontal_weights on a vertical bank");
  return table(kind, j);
}

double DyadicFilterBank::radius(int i1, int i2, int i3) const {
  if (dir_ == Direction::Vertical) return std::abs(grid_.wavenumber(2, i3));
  return std::hypot(grid_.wavenumber(0, i1), grid_.wavenumber(1, i2));
}

double DyadicFilterBank::weight(BlockKind kind, int j, int i1, int i2, int i3) const {
  const auto& t = table(kind, j);
  if (dir_ == Direction::Vertical) return t[static_cast<std::size_t>(i3)];
  return t[std::size_t(i1) + std::size_t(grid_.n_h) * i2];
}

SpectralScalarField dyadic_block(const SpectralScalarField& a, const DyadicFilterBank& bank,
                                 BlockKind kind, int j) {
  if (!(a.grid == bank.grid())) throw DimensionError("dyadic_block: grid mismatch");
  SpectralScalarField out(a.grid);
  const int nh = a.grid.n_h, nv = a.grid.n_v;
  const std::size_t plane = std::size_t(nh) * nh;

  // SLow at arbitrary j = low block + annuli below j (exact telescoping).
  if (kind == BlockKind::SLow && j != bank.j_min()) {
    if (!bank.covers(j)) throw ParameterError("dyadic_block: index outside bank");
    out = dyadic_block(a, bank, BlockKind::SLow, bank.j_min());
    for (int jj = bank.j_min(); jj < j; ++jj) out += dyadic_block(a, bank, BlockKind::Delta, jj);
    return out;
  }

  const auto& t = (bank.direction() == Direction::Vertical) ? bank.vertical_weights(kind, j)
                                                            : bank.horizontal_weights(kind, j);
  if (bank.direction() == Direction::Vertical) {
    par::for_range(nv, [&](std::int64_t s) {
      const double w = t[static_cast<std::size_t>(s)];
      const std::size_t base = static_cast<std::size_t>(s) * plane;
      for (std::size_t i = 0; i < plane; ++i) out.c[base + i] = w * a.c[base + i];
    });
  } else {
    par::for_range(nv, [&](std::int64_t s) {
      const std::size_t base = static_cast<std::size_t>(s) * plane;
      for (std::size_t i = 0; i < plane; ++i) out.c[base + i] = t[i] * a.c[base + i];
    });
  }
  return out;
}

} // namespace anidecay
