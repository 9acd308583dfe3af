#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anidecay/errors.hpp"
#include "anidecay/fft.hpp"
#include "anidecay/parallel.hpp"

#include "support/test_helpers.hpp"

#include <cstring>
#include <numbers>

using namespace anidecay;
using namespace anidecay::testing;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid3(7, 8, 1.0, 1.0), ParameterError);
  CHECK_THROWS_AS(Grid3(8, 9, 1.0, 1.0), ParameterError);
  CHECK_THROWS_AS(Grid3(6, 8, 1.0, 1.0), ParameterError);
  CHECK_THROWS_AS(Grid3(8, 8, 0.0, 1.0), ParameterError);
  CHECK_THROWS_AS(Grid3(8, 8, 1.0, -2.0), ParameterError);
  Grid3 g(8, 10, 2.0, 3.0);
  CHECK(g.size() == 8u * 8u * 10u);
}

TEST_CASE("mode indexing and wavenumbers") {
  Grid3 g(8, 8, 2.0 * kPi, 4.0 * kPi);
  CHECK(g.mode(0, 0) == 0);
  CHECK(g.mode(0, 3) == 3);
  CHECK(g.mode(0, 4) == -4); // Nyquist
  CHECK(g.mode(0, 7) == -1);
  CHECK(g.wavenumber(0, 0) == 0.0);
  CHECK(g.wavenumber(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.wavenumber(2, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g.wavenumber_deriv(0, 4) == 0.0); // Nyquist slot maps to zero
  CHECK(g.wavenumber_deriv(0, 3) == g.wavenumber(0, 3));
  CHECK(g.slot(0, -1) == 7);
}

TEST_CASE("zero field transforms to zero coefficients") {
  Grid3 g(8, 8, 2.0 * kPi, 2.0 * kPi);
  RealField f(g);
  SpectralScalarField a = fft_for(g).forward(f);
  CHECK(a.max_abs() == 0.0);
}

TEST_CASE("single cosine mode gives one conjugate pair") {
  Grid3 g(16, 8, 2.0 * kPi, 2.0 * kPi);
  RealField f(g);
  for (int i3 = 0; i3 < g.n_v; ++i3)
    for (int i2 = 0; i2 < g.n_h; ++i2)
      for (int i1 = 0; i1 < g.n_h; ++i1)
        f.at(i1, i2, i3) = 3.0 * std::cos(2.0 * kPi * 2.0 * i2 / g.n_h);
  SpectralScalarField a = fft_for(g).forward(f);
  CHECK(std::abs(a.mode(0, 2, 0) - Complex(1.5, 0.0)) < 1e-13);
  CHECK(std::abs(a.mode(0, -2, 0) - Complex(1.5, 0.0)) < 1e-13);
  // nothing anywhere else
  a.mode(0, 2, 0) = 0.0;
  a.mode(0, -2, 0) = 0.0;
  CHECK(a.max_abs() < 1e-13);
}

TEST_CASE("random field round trip and Plancherel") {
  Grid3 g(16, 12, 1.7, 3.9);
  RealField f = random_real_field(g, 11);
  const FourierTransform& fft = fft_for(g);
  SpectralScalarField a = fft.forward(f);

  double imag = 0.0;
  RealField back = fft.inverse(a, &imag);
  double err = 0.0;
  for (std::size_t i = 0; i < f.v.size(); ++i)
    err = std::max(err, std::abs(back.v[i] - f.v[i]));
  CHECK(err <= 1e-12 * f.max_abs());
  CHECK(imag <= 1e-12 * f.max_abs());

  // fast (c2r) path agrees with the diagnostic path
  RealField fast = fft.inverse(a);
  double derr = 0.0;
  for (std::size_t i = 0; i < f.v.size(); ++i)
    derr = std::max(derr, std::abs(fast.v[i] - back.v[i]));
  CHECK(derr <= 1e-12 * f.max_abs());

  // Plancherel: sum |samples|^2 cell = volume sum |coeffs|^2
  double phys = 0.0;
  for (double x : f.v) phys += x * x;
  phys *= g.cell_volume();
  double spec = 0.0;
  for (const Complex& c : a.c) spec += std::norm(c);
  spec *= g.volume();
  CHECK(rel_err(spec, phys) <= 1e-12);

  CHECK(a.hermitian_defect() <= 1e-12 * a.max_abs());
}

TEST_CASE("forward transform matches the naive DFT oracle") {
  Grid3 g(12, 8, 2.0 * kPi, 5.0);
  RealField f = random_real_field(g, 23);
  SpectralScalarField fast = fft_for(g).forward(f);
  SpectralScalarField slow = naive_dft(f);
  double err = 0.0;
  for (std::size_t i = 0; i < fast.c.size(); ++i)
    err = std::max(err, std::abs(fast.c[i] - slow.c[i]));
  CHECK(err <= 1e-12 * fast.max_abs());
}

TEST_CASE("serial and OpenMP paths are bit-identical") {
  Grid3 g(16, 16, 2.0 * kPi, 2.0 * kPi);
  RealField f = random_real_field(g, 31);
  const FourierTransform& fft = fft_for(g);

  par::set_default_exec(Exec::Serial);
  SpectralScalarField a1 = fft.forward(f);
  RealField r1 = fft.inverse(a1);
  par::set_threads(2);
  par::set_default_exec(Exec::OpenMP);
  SpectralScalarField a2 = fft.forward(f);
  RealField r2 = fft.inverse(a2);
  par::set_threads(1);

  REQUIRE(a1.c.size() == a2.c.size());
  CHECK(std::memcmp(a1.c.data(), a2.c.data(), a1.c.size() * sizeof(Complex)) == 0);
  CHECK(std::memcmp(r1.v.data(), r2.v.data(), r1.v.size() * sizeof(double)) == 0);
}

TEST_CASE("dimension mismatch raises a structured error") {
  Grid3 g1(8, 8, 1.0, 1.0), g2(16, 8, 1.0, 1.0);
  RealField f(g2);
  CHECK_THROWS_AS((void)fft_for(g1).forward(f), DimensionError);
}
