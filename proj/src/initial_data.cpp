#include "anidecay/initial_data.hpp"

#include "anidecay/errors.hpp"
#include "anidecay/spectral_ops.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace anidecay {

namespace {

double envelope_value(const SpectralEnvelope& env, const Grid3& g, int i1, int i2, int i3) {
  if (!inside_dealias_band(g, i1, i2, i3)) return 0.0;
  const double k1 = g.wavenumber(0, i1);
  const double k2 = g.wavenumber(1, i2);
  const double k3 = g.wavenumber(2, i3);
  const double kh = std::hypot(k1, k2);
  if (kh == 0.0 || k3 == 0.0) return 0.0;
  const double kk = kh * kh + k3 * k3;
  return env.amplitude * std::pow(kh, env.a_h) * std::pow(std::abs(k3), env.b_v) *
         std::exp(-kk / (2.0 * env.sigma * env.sigma));
}

// uniform double in [0,1) from the raw generator, implementation-independent
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool canonical_mode(int m1, int m2, int m3) {
  if (m3 != 0) return m3 > 0;
  if (m2 != 0) return m2 > 0;
  return m1 > 0;
}

} // namespace

GeneratedData generate(const SpectralEnvelope& env, const Grid3& grid, double s, double s1) {
  if (!(env.sigma > 0.0)) throw ParameterError("generate: sigma must be positive");
  if (!(env.amplitude >= 0.0)) throw ParameterError("generate: amplitude must be >= 0");
  if (!(env.a_h > s - 1.0))
    throw ParameterError("generate: envelope exponent a_h must exceed s - 1 for H^{-s,0} "
                         "membership (a_h = " + std::to_string(env.a_h) +
                         ", s = " + std::to_string(s) + ")");
  check_parameter_gate(s, s1);

  SpectralVectorField v(grid);
  std::mt19937_64 rng(env.seed);
  const int nh = grid.n_h, nv = grid.n_v;
  const double two_pi = 2.0 * std::numbers::pi;

  // Fixed slot order; draws happen only for canonical modes with nonzero
  // envelope, so the stream position is a pure function of grid + envelope.
  for (int i3 = 0; i3 < nv; ++i3) {
    const int m3 = grid.mode(2, i3);
    for (int i2 = 0; i2 < nh; ++i2) {
      const int m2 = grid.mode(1, i2);
      for (int i1 = 0; i1 < nh; ++i1) {
        const int m1 = grid.mode(0, i1);
        if (!canonical_mode(m1, m2, m3)) continue;
        const double a = envelope_value(env, grid, i1, i2, i3);
        if (a == 0.0) continue;

        const double alpha = two_pi * unit_uniform(rng);
        const double beta = two_pi * unit_uniform(rng);
        const double gamma = two_pi * unit_uniform(rng);

        const double k1 = grid.wavenumber(0, i1);
        const double k2 = grid.wavenumber(1, i2);
        const double k3 = grid.wavenumber(2, i3);
        const double kh = std::hypot(k1, k2);
        const double kn = std::hypot(kh, k3);
        // orthonormal polarization basis perpendicular to k
        const double e1[3] = {k2 / kh, -k1 / kh, 0.0};
        const double e2[3] = {k1 * k3 / (kh * kn), k2 * k3 / (kh * kn), -kh / kn};

        const Complex phase = std::polar(a, gamma);
        const Complex c1 = phase * std::cos(alpha);
        const Complex c2 = phase * std::sin(alpha) * std::polar(1.0, beta);

        const int j1 = (nh - i1) % nh, j2 = (nh - i2) % nh, j3 = (nv - i3) % nv;
        for (int c = 0; c < 3; ++c) {
          const Complex val = c1 * e1[c] + c2 * e2[c];
          v[c].at(i1, i2, i3) = val;
          v[c].at(j1, j2, j3) = std::conj(val);
        }
      }
    }
  }

  GeneratedData out;
  out.field = leray_project(v);
  out.field.div_free = true;
  out.report = data_functionals(out.field, s, s1);
  return out;
}

SpectralVectorField rescale_to_smallness(const SpectralVectorField& v0, double target_c0) {
  if (!(target_c0 >= 0.0)) throw ParameterError("rescale_to_smallness: negative target");
  DyadicFilterBank vbank = DyadicFilterBank::covering(v0.grid, Direction::Vertical);
  const double current = b0half_norm(v0, vbank);
  if (current == 0.0) throw ParameterError("rescale_to_smallness: zero input field");
  SpectralVectorField out = v0;
  out *= target_c0 / current;
  return out;
}

SpectralVectorField scaling_transform(const SpectralVectorField& v0, double lambda) {
  if (!(lambda > 0.0)) throw ParameterError("scaling_transform: lambda must be positive");
  const double m = std::log2(lambda);
  if (m != std::nearbyint(m))
    throw ParameterError("scaling_transform: lambda must be a power of two, got " +
                         std::to_string(lambda));
  Grid3 g(v0.grid.n_h, v0.grid.n_v, v0.grid.l_h / lambda, v0.grid.l_v / lambda);
  SpectralVectorField out(g);
  for (int c = 0; c < 3; ++c) {
    out[c].c = v0[c].c;
    out[c] *= lambda;
  }
  out.div_free = v0.div_free;
  return out;
}

} // namespace anidecay
