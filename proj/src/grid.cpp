#include "anidecay/grid.hpp"

#include "anidecay/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace anidecay {

Grid3::Grid3(int nh, int nv, double lh, double lv) : n_h(nh), n_v(nv), l_h(lh), l_v(lv) {
  if (nh < 8 || nh % 2 != 0)
    throw ParameterError("Grid3: n_h must be an even integer >= 8, got " + std::to_string(nh));
  if (nv < 8 || nv % 2 != 0)
    throw ParameterError("Grid3: n_v must be an even integer >= 8, got " + std::to_string(nv));
  if (!(lh > 0.0) || !(lv > 0.0)) throw ParameterError("Grid3: box lengths must be positive");
}

double Grid3::wavenumber(int axis, int s) const {
  return 2.0 * std::numbers::pi * mode(axis, s) / box_length(axis);
}

double Grid3::wavenumber_deriv(int axis, int s) const {
  const int N = n(axis);
  if (s == N / 2) return 0.0; // Nyquist slot
  return wavenumber(axis, s);
}

} // namespace anidecay
