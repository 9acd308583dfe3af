#pragma once

#include "anidecay/field.hpp"

#include <vector>

namespace anidecay {

enum class Direction { Horizontal, Vertical };
enum class BlockKind { Delta, SLow };

/// Dyadic cutoff pair: phi is a normalized C^inf bump supported in
/// [3/4, 8/3] with sum_j phi(2^-j tau) = 1 for tau > 0, and
/// chi(tau) = 1 - sum_{j>=0} phi(2^-j tau) (supported in [0, 4/3], equal to 1
/// on [0, 3/4]). Both are evaluated analytically from the mollified-indicator
/// construction, so the partition identities hold to round-off at any sample
/// point.
double dyadic_phi(double tau);
double dyadic_chi(double tau);

/// Cutoff weights of the dyadic family sampled on a grid for one frequency
/// direction. Immutable after construction; freely shared between threads.
class DyadicFilterBank {
public:
  /// Blocks j_min..j_max plus the low block chi(2^-j_min |.|). Throws if the
  /// grid cannot host the requested bands; the message names the maximal
  /// feasible j_max.
  DyadicFilterBank(const Grid3& grid, Direction dir, int j_min, int j_max);

  /// Bank with default index range covering every lattice scale of the grid.
  static DyadicFilterBank covering(const Grid3& grid, Direction dir);

  const Grid3& grid() const { return grid_; }
  Direction direction() const { return dir_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  bool covers(int j) const { return j >= j_min_ && j <= j_max_; }

  /// Multiplier weight of block (kind, j) at flat lattice index.
  /// For Direction::Vertical weights depend on i3 only; for Horizontal on
  /// (i1,i2). The accessors below expose the compact tables.
  double weight(BlockKind kind, int j, int i1, int i2, int i3) const;

  /// Vertical table: weight per i3 slot.
  const std::vector<double>& vertical_weights(BlockKind kind, int j) const;
  /// Horizontal table: weight per (i1 + n_h*i2).
  const std::vector<double>& horizontal_weights(BlockKind kind, int j) const;

  /// Radial frequency argument of the direction at a slot pair.
  double radius(int i1, int i2, int i3) const;

private:
  Grid3 grid_;
  Direction dir_;
  int j_min_, j_max_;
  // tables[0] = low block (chi at j_min), tables[1 + (j - j_min)] = Delta_j
  std::vector<std::vector<double>> tables_;
  const std::vector<double>& table(BlockKind kind, int j) const;
};

/// Frequency-localized piece of a: Delta_j (annulus) or S_j (ball) in the
/// bank's direction. Throws if the bank does not cover j.
SpectralScalarField dyadic_block(const SpectralScalarField& a, const DyadicFilterBank& bank,
                                 BlockKind kind, int j);

/// Largest block index the grid can host in a direction (band must intersect
/// the lattice's frequency range).
int max_feasible_block(const Grid3& grid, Direction dir);

} // namespace anidecay
