#pragma once

// Shared test utilities: independent oracles (naive DFT, direct-summation
// convolution, brute-force advection assembly) and small field builders.
// Everything here is deliberately written against the storage conventions
// only, not against the library's transform/operator code paths.

#include "anidecay/field.hpp"
#include "anidecay/fft.hpp"
#include "anidecay/grid.hpp"
#include "anidecay/spectral_ops.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace anidecay::testing {

inline double rel_err(double got, double want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

inline RealField random_real_field(const Grid3& g, std::uint64_t seed) {
  RealField f(g);
  std::mt19937_64 rng(seed);
  for (auto& x : f.v) x = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
  return f;
}

inline SpectralScalarField random_spectral_field(const Grid3& g, std::uint64_t seed,
                                                 bool band_limited = true) {
  SpectralScalarField a = fft_for(g).forward(random_real_field(g, seed));
  if (band_limited) dealias_inplace(a);
  a.c[0] = Complex(0.0, 0.0);
  return a;
}

/// O(N^2) direct-summation DFT with the library's normalization:
/// ahat(m) = (1/N) sum_x a(x) e^{-i k_m . x}. Small grids only.
inline SpectralScalarField naive_dft(const RealField& f) {
  const Grid3& g = f.grid;
  SpectralScalarField out(g);
  const double tp = 2.0 * std::numbers::pi;
  for (int m3 = 0; m3 < g.n_v; ++m3)
    for (int m2 = 0; m2 < g.n_h; ++m2)
      for (int m1 = 0; m1 < g.n_h; ++m1) {
        Complex acc(0.0, 0.0);
        for (int x3 = 0; x3 < g.n_v; ++x3)
          for (int x2 = 0; x2 < g.n_h; ++x2)
            for (int x1 = 0; x1 < g.n_h; ++x1) {
              const double phase = tp * (static_cast<double>(g.mode(0, m1)) * x1 / g.n_h +
                                         static_cast<double>(g.mode(1, m2)) * x2 / g.n_h +
                                         static_cast<double>(g.mode(2, m3)) * x3 / g.n_v);
              acc += f.at(x1, x2, x3) * Complex(std::cos(phase), -std::sin(phase));
            }
        out.at(m1, m2, m3) = acc / static_cast<double>(g.size());
      }
  return out;
}

/// True (non-aliased) convolution of two band-limited coefficient arrays,
/// truncated to the 2/3 dealias band: c(m) = sum_{p+q=m} a(p) b(q).
inline SpectralScalarField direct_convolution(const SpectralScalarField& a,
                                              const SpectralScalarField& b) {
  const Grid3& g = a.grid;
  SpectralScalarField out(g);
  const int lh = g.dealias_limit(0), lv = g.dealias_limit(2);
  // gather nonzero support of both factors
  struct Mode {
    int m1, m2, m3;
    Complex c;
  };
  std::vector<Mode> am, bm;
  for (int i3 = 0; i3 < g.n_v; ++i3)
    for (int i2 = 0; i2 < g.n_h; ++i2)
      for (int i1 = 0; i1 < g.n_h; ++i1) {
        const Complex ca = a.at(i1, i2, i3);
        if (ca != Complex(0.0, 0.0))
          am.push_back({g.mode(0, i1), g.mode(1, i2), g.mode(2, i3), ca});
        const Complex cb = b.at(i1, i2, i3);
        if (cb != Complex(0.0, 0.0))
          bm.push_back({g.mode(0, i1), g.mode(1, i2), g.mode(2, i3), cb});
      }
  for (const auto& p : am)
    for (const auto& q : bm) {
      const int m1 = p.m1 + q.m1, m2 = p.m2 + q.m2, m3 = p.m3 + q.m3;
      if (std::abs(m1) > lh || std::abs(m2) > lh || std::abs(m3) > lv) continue;
      out.mode(m1, m2, m3) += p.c * q.c;
    }
  return out;
}

/// Brute-force Leray-projected advection term -P(div(v (x) v)) assembled from
/// direct convolutions; the oracle for nonlinear_term on tiny grids.
inline SpectralVectorField oracle_nonlinear(const SpectralVectorField& v) {
  const Grid3& g = v.grid;
  std::array<std::array<SpectralScalarField, 3>, 3> w;
  for (int j = 0; j < 3; ++j)
    for (int k = j; k < 3; ++k) {
      w[j][k] = direct_convolution(v[j], v[k]);
      if (k != j) w[k][j] = w[j][k];
    }
  SpectralVectorField adv(g);
  for (int i3 = 0; i3 < g.n_v; ++i3)
    for (int i2 = 0; i2 < g.n_h; ++i2)
      for (int i1 = 0; i1 < g.n_h; ++i1) {
        const double kv[3] = {g.wavenumber_deriv(0, i1), g.wavenumber_deriv(1, i2),
                              g.wavenumber_deriv(2, i3)};
        for (int c = 0; c < 3; ++c) {
          Complex acc(0.0, 0.0);
          for (int j = 0; j < 3; ++j)
            acc += Complex(0.0, kv[j]) * w[j][c].at(i1, i2, i3);
          adv[c].at(i1, i2, i3) = -acc;
        }
      }
  // Leray projection written out directly
  SpectralVectorField out(g);
  for (int i3 = 0; i3 < g.n_v; ++i3)
    for (int i2 = 0; i2 < g.n_h; ++i2)
      for (int i1 = 0; i1 < g.n_h; ++i1) {
        const double kv[3] = {g.wavenumber_deriv(0, i1), g.wavenumber_deriv(1, i2),
                              g.wavenumber_deriv(2, i3)};
        const double kk = kv[0] * kv[0] + kv[1] * kv[1] + kv[2] * kv[2];
        if (kk == 0.0) continue;
        Complex dot(0.0, 0.0);
        for (int j = 0; j < 3; ++j) dot += kv[j] * adv[j].at(i1, i2, i3);
        dot /= kk;
        for (int c = 0; c < 3; ++c) out[c].at(i1, i2, i3) = adv[c].at(i1, i2, i3) - kv[c] * dot;
      }
  return out;
}

/// 2D Taylor-Green velocity (sin x1 cos x2, -cos x1 sin x2, 0) sampled on the
/// grid and transformed; divergence-free, no x3 dependence.
inline SpectralVectorField taylor_green(const Grid3& g) {
  const FourierTransform& fft = fft_for(g);
  RealField u(g), w(g);
  for (int i3 = 0; i3 < g.n_v; ++i3)
    for (int i2 = 0; i2 < g.n_h; ++i2)
      for (int i1 = 0; i1 < g.n_h; ++i1) {
        const double x = 2.0 * std::numbers::pi * i1 / g.n_h;
        const double y = 2.0 * std::numbers::pi * i2 / g.n_h;
        u.at(i1, i2, i3) = std::sin(x) * std::cos(y);
        w.at(i1, i2, i3) = -std::cos(x) * std::sin(y);
      }
  SpectralVectorField v(g);
  v[0] = fft.forward(u);
  v[1] = fft.forward(w);
  v.div_free = true;
  return v;
}

/// Single Hermitian mode pair: c at (m1,m2,m3), conj(c) at the mirror.
inline SpectralScalarField single_mode(const Grid3& g, int m1, int m2, int m3, Complex c) {
  SpectralScalarField a(g);
  a.mode(m1, m2, m3) = c;
  a.mode(-m1, -m2, -m3) = std::conj(c);
  return a;
}

} // namespace anidecay::testing
