#include "anidecay/field.hpp"

#include "anidecay/errors.hpp"

#include <cmath>

namespace anidecay {

namespace {
void check_same_grid(const Grid3& a, const Grid3& b) {
  if (!(a == b)) throw DimensionError("field operation: grids differ");
}
} // namespace

double SpectralScalarField::max_abs() const {
  const auto n3 = static_cast<std::int64_t>(grid.n_v);
  const std::size_t plane = std::size_t(grid.n_h) * grid.n_h;
  return par::max_slabs(n3, [&](std::int64_t s) {
    double m = 0.0;
    const std::size_t base = static_cast<std::size_t>(s) * plane;
    for (std::size_t i = 0; i < plane; ++i) {
      const double a = std::abs(c[base + i]);
      if (a > m) m = a;
    }
    return m;
  });
}

double SpectralScalarField::hermitian_defect() const {
  const int nh = grid.n_h, nv = grid.n_v;
  double worst = 0.0;
  for (int i3 = 0; i3 < nv; ++i3) {
    const int j3 = (nv - i3) % nv;
    for (int i2 = 0; i2 < nh; ++i2) {
      const int j2 = (nh - i2) % nh;
      for (int i1 = 0; i1 < nh; ++i1) {
        const int j1 = (nh - i1) % nh;
        const Complex d = at(j1, j2, j3) - std::conj(at(i1, i2, i3));
        const double a = std::abs(d);
        if (a > worst) worst = a;
      }
    }
  }
  return worst;
}

SpectralScalarField& SpectralScalarField::operator+=(const SpectralScalarField& o) {
  check_same_grid(grid, o.grid);
  par::for_range(static_cast<std::int64_t>(c.size()),
                 [&](std::int64_t i) { c[static_cast<std::size_t>(i)] += o.c[static_cast<std::size_t>(i)]; });
  return *this;
}

SpectralScalarField& SpectralScalarField::operator-=(const SpectralScalarField& o) {
  check_same_grid(grid, o.grid);
  par::for_range(static_cast<std::int64_t>(c.size()),
                 [&](std::int64_t i) { c[static_cast<std::size_t>(i)] -= o.c[static_cast<std::size_t>(i)]; });
  return *this;
}

SpectralScalarField& SpectralScalarField::operator*=(double a) {
  par::for_range(static_cast<std::int64_t>(c.size()),
                 [&](std::int64_t i) { c[static_cast<std::size_t>(i)] *= a; });
  return *this;
}

SpectralScalarField operator+(SpectralScalarField a, const SpectralScalarField& b) { return a += b; }
SpectralScalarField operator-(SpectralScalarField a, const SpectralScalarField& b) { return a -= b; }
SpectralScalarField operator*(double a, SpectralScalarField f) { return f *= a; }

double SpectralVectorField::max_abs() const {
  double m = 0.0;
  for (const auto& f : comp) m = std::max(m, f.max_abs());
  return m;
}

double SpectralVectorField::divergence_residual() const {
  const int nh = grid.n_h, nv = grid.n_v;
  const std::size_t plane = std::size_t(nh) * nh;
  return par::max_slabs(static_cast<std::int64_t>(nv), [&](std::int64_t s) {
    const int i3 = static_cast<int>(s);
    const double k3 = grid.wavenumber_deriv(2, i3);
    double worst = 0.0;
    for (int i2 = 0; i2 < nh; ++i2) {
      const double k2 = grid.wavenumber_deriv(1, i2);
      const std::size_t row = static_cast<std::size_t>(s) * plane + std::size_t(i2) * nh;
      for (int i1 = 0; i1 < nh; ++i1) {
        const double k1 = grid.wavenumber_deriv(0, i1);
        const Complex d =
            k1 * comp[0].c[row + i1] + k2 * comp[1].c[row + i1] + k3 * comp[2].c[row + i1];
        const double a = std::abs(d);
        if (a > worst) worst = a;
      }
    }
    return worst;
  });
}

SpectralVectorField& SpectralVectorField::operator+=(const SpectralVectorField& o) {
  for (int i = 0; i < 3; ++i) comp[static_cast<std::size_t>(i)] += o.comp[static_cast<std::size_t>(i)];
  return *this;
}

SpectralVectorField& SpectralVectorField::operator-=(const SpectralVectorField& o) {
  for (int i = 0; i < 3; ++i) comp[static_cast<std::size_t>(i)] -= o.comp[static_cast<std::size_t>(i)];
  return *this;
}

SpectralVectorField& SpectralVectorField::operator*=(double a) {
  for (auto& f : comp) f *= a;
  return *this;
}

SpectralVectorField operator+(SpectralVectorField a, const SpectralVectorField& b) { return a += b; }
SpectralVectorField operator-(SpectralVectorField a, const SpectralVectorField& b) { return a -= b; }
SpectralVectorField operator*(double a, SpectralVectorField f) { return f *= a; }

double RealField::max_abs() const {
  const auto n3 = static_cast<std::int64_t>(grid.n_v);
  const std::size_t plane = std::size_t(grid.n_h) * grid.n_h;
  return par::max_slabs(n3, [&](std::int64_t s) {
    double m = 0.0;
    const std::size_t base = static_cast<std::size_t>(s) * plane;
    for (std::size_t i = 0; i < plane; ++i) {
      const double a = std::abs(v[base + i]);
      if (a > m) m = a;
    }
    return m;
  });
}

} // namespace anidecay
