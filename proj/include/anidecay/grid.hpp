#pragma once

#include <cstddef>
#include <cstdint>

namespace anidecay {

// ---------------------------------------------------------------------------
// Storage and normalization conventions (used bit-exactly by checkpoints).
//
//   * Periodic box [0,l_h) x [0,l_h) x [0,l_v), sampled on an even
//     n_h x n_h x n_v lattice: x_i = L_i * j_i / N_i.
//   * Array index order: (m1, m2, m3) with m1 fastest varying,
//     flat index = i1 + n_h*(i2 + n_h*i3).
//   * Mode index m in [-N/2, N/2): slot i holds m = i for i < N/2,
//     m = i - N otherwise. Wavenumber k_i = 2*pi*m_i / L_i, mode 0 -> k = 0.
//   * Coefficient convention: a(x) = sum_m ahat(m) e^{i k_m . x}; the forward
//     transform therefore carries the 1/(n_h^2 n_v) factor.
//   * Plancherel: sum_x |a(x)|^2 * cell_volume = volume * sum_m |ahat(m)|^2,
//     i.e. ||a||_{L2}^2 = volume() * sum |ahat|^2.
//   * Odd derivatives use k = 0 on the Nyquist slot m = -N/2 so that real
//     fields stay real; even symbols use the slot's |k| unchanged. Fields
//     evolved by the solver never populate Nyquist slots (dealias mask).
// ---------------------------------------------------------------------------

/// Periodic-box lattice: n_h modes per horizontal axis, n_v vertical.
struct Grid3 {
  int n_h = 0;
  int n_v = 0;
  double l_h = 0.0;
  double l_v = 0.0;

  Grid3() = default;
  Grid3(int nh, int nv, double lh, double lv);

  std::size_t size() const { return std::size_t(n_h) * n_h * n_v; }
  double volume() const { return l_h * l_h * l_v; }
  double cell_volume() const { return (l_h / n_h) * (l_h / n_h) * (l_v / n_v); }

  int n(int axis) const { return axis == 2 ? n_v : n_h; }
  double box_length(int axis) const { return axis == 2 ? l_v : l_h; }

  /// Slot index -> signed mode index in [-N/2, N/2).
  int mode(int axis, int slot) const {
    const int N = n(axis);
    return slot < N / 2 ? slot : slot - N;
  }
  /// Signed mode index -> slot.
  int slot(int axis, int m) const {
    const int N = n(axis);
    return m >= 0 ? m : m + N;
  }

  /// Wavenumber 2*pi*m/L of a slot, Nyquist included with its negative sign.
  double wavenumber(int axis, int slot) const;
  /// Wavenumber for odd-derivative symbols: 0 on the Nyquist slot.
  double wavenumber_deriv(int axis, int slot) const;

  std::size_t flat(int i1, int i2, int i3) const {
    return std::size_t(i1) + std::size_t(n_h) * (std::size_t(i2) + std::size_t(n_h) * i3);
  }

  /// Largest |m| kept by the 2/3-rule mask on an axis: alias images of
  /// products of masked fields land strictly outside the mask.
  int dealias_limit(int axis) const { return (n(axis) - 1) / 3; }

  bool operator==(const Grid3&) const = default;
};

/// Per-mode geometry handed to kernels: wavenumbers of a flat index.
struct ModeView {
  const Grid3* g;
  explicit ModeView(const Grid3& grid) : g(&grid) {}

  void decompose(std::size_t flat, int& i1, int& i2, int& i3) const {
    const auto nh = static_cast<std::size_t>(g->n_h);
    i1 = static_cast<int>(flat % nh);
    i2 = static_cast<int>((flat / nh) % nh);
    i3 = static_cast<int>(flat / (nh * nh));
  }
};

} // namespace anidecay
