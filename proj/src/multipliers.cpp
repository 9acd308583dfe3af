#include "anidecay/multipliers.hpp"

#include "anidecay/errors.hpp"

#include <cmath>

namespace anidecay {

MultiplierSpec MultiplierSpec::horizontal_heat(double t) {
  return {Kind::HorizontalHeat, t, 0.0, 0};
}
MultiplierSpec MultiplierSpec::full_heat(double t) { return {Kind::FullHeat, t, 0.0, 0}; }
MultiplierSpec MultiplierSpec::horizontal_power(double sigma) {
  return {Kind::HorizontalPower, 0.0, sigma, 0};
}
MultiplierSpec MultiplierSpec::inverse_laplace() { return {Kind::InverseLaplace, 0.0, 0.0, 0}; }
MultiplierSpec MultiplierSpec::derivative(int axis) { return {Kind::Derivative, 0.0, 0.0, axis}; }

MultiplierResult apply_multiplier(const SpectralScalarField& a, const MultiplierSpec& m) {
  if (!std::isfinite(m.t) || !std::isfinite(m.sigma))
    throw ParameterError("apply_multiplier: nonfinite multiplier parameter");
  if ((m.kind == MultiplierSpec::Kind::HorizontalHeat || m.kind == MultiplierSpec::Kind::FullHeat) &&
      m.t < 0.0)
    throw ParameterError("apply_multiplier: heat multiplier requires t >= 0");
  if (m.kind == MultiplierSpec::Kind::Derivative && (m.axis < 0 || m.axis > 2))
    throw ParameterError("apply_multiplier: derivative axis out of range");

  const Grid3& g = a.grid;
  MultiplierResult out;
  out.field = SpectralScalarField(g);
  const int nh = g.n_h, nv = g.n_v;
  const std::size_t plane = std::size_t(nh) * nh;
  const bool singular_kh0 = m.kind == MultiplierSpec::Kind::HorizontalPower && m.sigma < 0.0;

  out.excluded_mass = par::sum_slabs(nv, [&](std::int64_t s) {
    const int i3 = static_cast<int>(s);
    const double k3 = g.wavenumber(2, i3);
    const double k3d = g.wavenumber_deriv(2, i3);
    double excluded = 0.0;
    for (int i2 = 0; i2 < nh; ++i2) {
      const double k2 = g.wavenumber(1, i2);
      const std::size_t row = static_cast<std::size_t>(s) * plane + std::size_t(i2) * nh;
      for (int i1 = 0; i1 < nh; ++i1) {
        const double k1 = g.wavenumber(0, i1);
        const double kh2 = k1 * k1 + k2 * k2;
        const Complex v = a.c[row + i1];
        Complex r;
        switch (m.kind) {
          case MultiplierSpec::Kind::HorizontalHeat:
            r = v * std::exp(-m.t * kh2);
            break;
          case MultiplierSpec::Kind::FullHeat:
            r = v * std::exp(-m.t * (kh2 + k3 * k3));
            break;
          case MultiplierSpec::Kind::HorizontalPower:
            if (kh2 == 0.0) {
              if (singular_kh0) {
                excluded += std::norm(v);
                r = Complex(0.0, 0.0);
              } else {
                r = (m.sigma == 0.0) ? v : Complex(0.0, 0.0);
              }
            } else {
              r = v * std::pow(kh2, 0.5 * m.sigma);
            }
            break;
          case MultiplierSpec::Kind::InverseLaplace: {
            const double kk = kh2 + k3 * k3;
            if (kk == 0.0) {
              excluded += std::norm(v);
              r = Complex(0.0, 0.0);
            } else {
              r = v / kk;
            }
            break;
          }
          case MultiplierSpec::Kind::Derivative: {
            const double kd = m.axis == 0 ? g.wavenumber_deriv(0, i1)
                              : m.axis == 1 ? g.wavenumber_deriv(1, i2)
                                            : k3d;
            r = Complex(0.0, kd) * v;
            break;
          }
        }
        out.field.c[row + i1] = r;
      }
    }
    return excluded;
  });
  out.excluded_mass *= g.volume();
  return out;
}

SpectralScalarField derivative(const SpectralScalarField& a, int axis) {
  return apply_multiplier(a, MultiplierSpec::derivative(axis)).field;
}

SpectralScalarField divergence(const SpectralVectorField& v) {
  SpectralScalarField d = derivative(v[0], 0);
  d += derivative(v[1], 1);
  d += derivative(v[2], 2);
  return d;
}

} // namespace anidecay
