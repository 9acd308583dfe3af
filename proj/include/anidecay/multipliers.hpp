#pragma once

#include "anidecay/field.hpp"

namespace anidecay {

/// Fourier multipliers used by the solver and the Duhamel formulas.
struct MultiplierSpec {
  enum class Kind {
    HorizontalHeat, ///< e^{-t |k_h|^2}; identity on the plane k_h = 0
    FullHeat,       ///< e^{-t |k|^2}
    HorizontalPower,///< |k_h|^sigma; sigma < 0 undefined on k_h = 0
    InverseLaplace, ///< |k|^{-2}; undefined at k = 0
    Derivative      ///< i k_j (component axis j), Nyquist slot mapped to 0
  };

  Kind kind;
  double t = 0.0;     // heat kinds
  double sigma = 0.0; // HorizontalPower
  int axis = 0;       // Derivative

  static MultiplierSpec horizontal_heat(double t);
  static MultiplierSpec full_heat(double t);
  static MultiplierSpec horizontal_power(double sigma);
  static MultiplierSpec inverse_laplace();
  static MultiplierSpec derivative(int axis);
};

struct MultiplierResult {
  SpectralScalarField field;
  /// L2 mass (volume-weighted sum of |ahat|^2) of input modes that sit on the
  /// multiplier's singular set and were mapped to zero. Zero for regular
  /// multipliers.
  double excluded_mass = 0.0;
};

/// Pointwise product with the multiplier symbol in frequency space.
/// Heat kinds require t >= 0; all parameters must be finite.
MultiplierResult apply_multiplier(const SpectralScalarField& a, const MultiplierSpec& m);

/// d/dx_axis in frequency space (exact ik_j product, Nyquist slot -> 0).
SpectralScalarField derivative(const SpectralScalarField& a, int axis);

/// div v = sum_j ik_j vhat^j.
SpectralScalarField divergence(const SpectralVectorField& v);

} // namespace anidecay
