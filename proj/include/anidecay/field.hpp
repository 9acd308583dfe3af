#pragma once

#include "anidecay/grid.hpp"
#include "anidecay/parallel.hpp"

#include <array>
#include <complex>
#include <vector>

namespace anidecay {

using Complex = std::complex<double>;

/// Fourier coefficients of a scalar field on a Grid3 (see grid.hpp for the
/// storage convention). Value type: copies are cheap enough at desk sizes and
/// all operations below are pure.
struct SpectralScalarField {
  Grid3 grid;
  std::vector<Complex> c;

  SpectralScalarField() = default;
  explicit SpectralScalarField(const Grid3& g) : grid(g), c(g.size(), Complex(0.0, 0.0)) {}

  Complex& at(int i1, int i2, int i3) { return c[grid.flat(i1, i2, i3)]; }
  const Complex& at(int i1, int i2, int i3) const { return c[grid.flat(i1, i2, i3)]; }

  /// Coefficient of the signed mode (m1,m2,m3).
  Complex& mode(int m1, int m2, int m3) {
    return c[grid.flat(grid.slot(0, m1), grid.slot(1, m2), grid.slot(2, m3))];
  }
  const Complex& mode(int m1, int m2, int m3) const {
    return c[grid.flat(grid.slot(0, m1), grid.slot(1, m2), grid.slot(2, m3))];
  }

  double max_abs() const;
  /// max_m |c(-m) - conj(c(m))|, the Hermitian-symmetry defect.
  double hermitian_defect() const;

  SpectralScalarField& operator+=(const SpectralScalarField& o);
  SpectralScalarField& operator-=(const SpectralScalarField& o);
  SpectralScalarField& operator*=(double a);
};

SpectralScalarField operator+(SpectralScalarField a, const SpectralScalarField& b);
SpectralScalarField operator-(SpectralScalarField a, const SpectralScalarField& b);
SpectralScalarField operator*(double a, SpectralScalarField f);

/// Three spectral components sharing one grid; div_free records that the
/// field was produced by (or checked against) the Leray projector.
struct SpectralVectorField {
  Grid3 grid;
  std::array<SpectralScalarField, 3> comp;
  bool div_free = false;

  SpectralVectorField() = default;
  explicit SpectralVectorField(const Grid3& g)
      : grid(g), comp{SpectralScalarField(g), SpectralScalarField(g), SpectralScalarField(g)} {}

  SpectralScalarField& operator[](int i) { return comp[static_cast<std::size_t>(i)]; }
  const SpectralScalarField& operator[](int i) const { return comp[static_cast<std::size_t>(i)]; }

  double max_abs() const;
  /// max_m |k . vhat(m)| over modes (the discrete divergence residual).
  double divergence_residual() const;
  Complex zero_mode(int component) const { return comp[static_cast<std::size_t>(component)].c[0]; }

  SpectralVectorField& operator+=(const SpectralVectorField& o);
  SpectralVectorField& operator-=(const SpectralVectorField& o);
  SpectralVectorField& operator*=(double a);
};

SpectralVectorField operator+(SpectralVectorField a, const SpectralVectorField& b);
SpectralVectorField operator-(SpectralVectorField a, const SpectralVectorField& b);
SpectralVectorField operator*(double a, SpectralVectorField f);

/// Real-space samples (same index order as coefficients).
struct RealField {
  Grid3 grid;
  std::vector<double> v;

  RealField() = default;
  explicit RealField(const Grid3& g) : grid(g), v(g.size(), 0.0) {}

  double& at(int i1, int i2, int i3) { return v[grid.flat(i1, i2, i3)]; }
  const double& at(int i1, int i2, int i3) const { return v[grid.flat(i1, i2, i3)]; }
  double max_abs() const;
};

} // namespace anidecay
