#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anidecay/errors.hpp"
#include "anidecay/initial_data.hpp"
#include "anidecay/multipliers.hpp"
#include "anidecay/norms.hpp"
#include "anidecay/spectral_ops.hpp"

#include "support/test_helpers.hpp"

#include <numbers>

using namespace anidecay;
using namespace anidecay::testing;

namespace {
const double kPi = std::numbers::pi;
const Grid3 kG(16, 16, 2.0 * kPi, 2.0 * kPi);
}

TEST_CASE("derivative of a single mode is ik scaling") {
  SpectralScalarField a = single_mode(kG, 3, -2, 1, Complex(0.4, 0.7));
  SpectralScalarField d = derivative(a, 0);
  CHECK(std::abs(d.mode(3, -2, 1) - Complex(0.0, 3.0) * a.mode(3, -2, 1)) < 1e-15);
  CHECK(std::abs(d.mode(-3, 2, -1) - Complex(0.0, -3.0) * a.mode(-3, 2, -1)) < 1e-15);

  SpectralScalarField cst(kG);
  cst.c[0] = Complex(5.0, 0.0);
  for (int axis = 0; axis < 3; ++axis) CHECK(derivative(cst, axis).max_abs() == 0.0);
}

TEST_CASE("leray projector annihilates gradients and is idempotent") {
  SpectralScalarField phi = random_spectral_field(kG, 5);
  SpectralVectorField grad(kG);
  for (int c = 0; c < 3; ++c) grad[c] = derivative(phi, c);
  SpectralVectorField pg = leray_project(grad);
  CHECK(pg.max_abs() <= 1e-12 * grad.max_abs());

  SpectralVectorField w(kG);
  for (int c = 0; c < 3; ++c) w[c] = random_spectral_field(kG, 6 + static_cast<std::uint64_t>(c));
  SpectralVectorField pw = leray_project(w);
  CHECK(pw.divergence_residual() <= 1e-12 * pw.max_abs());
  CHECK(std::abs(pw.zero_mode(0)) == 0.0);
  SpectralVectorField ppw = leray_project(pw);
  ppw -= pw;
  CHECK(ppw.max_abs() <= 1e-12 * pw.max_abs());
  CHECK(divergence(pw).max_abs() <= 1e-12 * pw.max_abs());

  // already divergence-free input passes through unchanged
  SpectralVectorField again = leray_project(pw);
  again -= pw;
  CHECK(again.max_abs() <= 1e-13 * pw.max_abs());
}

TEST_CASE("heat multipliers") {
  SpectralScalarField a = random_spectral_field(kG, 9);
  SpectralScalarField id = apply_multiplier(a, MultiplierSpec::horizontal_heat(0.0)).field;
  id -= a;
  CHECK(id.max_abs() == 0.0);

  // single mode |k_h| = 1 damped by e^{-t}
  SpectralScalarField m = single_mode(kG, 1, 0, 2, Complex(1.0, -0.5));
  SpectralScalarField ht = apply_multiplier(m, MultiplierSpec::horizontal_heat(1.0)).field;
  CHECK(std::abs(ht.mode(1, 0, 2) - std::exp(-1.0) * m.mode(1, 0, 2)) < 1e-15);

  // k_h = 0 plane untouched by the horizontal heat flow
  SpectralScalarField p = single_mode(kG, 0, 0, 3, Complex(0.3, 0.1));
  SpectralScalarField hp = apply_multiplier(p, MultiplierSpec::horizontal_heat(7.0)).field;
  hp -= p;
  CHECK(hp.max_abs() == 0.0);

  CHECK_THROWS_AS((void)apply_multiplier(a, MultiplierSpec::horizontal_heat(-1.0)),
                  ParameterError);
  MultiplierSpec bad = MultiplierSpec::horizontal_power(std::nan(""));
  CHECK_THROWS_AS((void)apply_multiplier(a, bad), ParameterError);
}

TEST_CASE("negative-power multipliers report the excluded singular mass") {
  SpectralScalarField a = single_mode(kG, 0, 0, 2, Complex(2.0, 0.0)); // on k_h = 0
  a.mode(1, 0, 1) = Complex(0.0, 1.0);
  a.mode(-1, 0, -1) = Complex(0.0, -1.0);
  MultiplierResult r = apply_multiplier(a, MultiplierSpec::horizontal_power(-0.7));
  // plane mass: two slots of |2|^2, volume-weighted
  CHECK(rel_err(r.excluded_mass, kG.volume() * 2.0 * 4.0) <= 1e-12);
  CHECK(std::abs(r.field.mode(0, 0, 2)) == 0.0);
  CHECK(std::abs(r.field.mode(1, 0, 1)) > 0.0);

  MultiplierResult ri = apply_multiplier(a, MultiplierSpec::inverse_laplace());
  CHECK(ri.excluded_mass == 0.0); // no zero-mode mass in a
  SpectralScalarField z(kG);
  z.c[0] = Complex(3.0, 0.0);
  MultiplierResult rz = apply_multiplier(z, MultiplierSpec::inverse_laplace());
  CHECK(rel_err(rz.excluded_mass, kG.volume() * 9.0) <= 1e-12);
  CHECK(rz.field.max_abs() == 0.0);
}

TEST_CASE("|D_h| on a banded field scales like the band radius") {
  // mass only at |k_h| = 2 and 3 (band j=1 covers [1.5, 5.33])
  SpectralScalarField a(kG);
  a.mode(2, 0, 1) = Complex(0.3, 0.2);
  a.mode(-2, 0, -1) = Complex(0.3, -0.2);
  a.mode(0, 3, 2) = Complex(0.1, 0.0);
  a.mode(0, -3, -2) = Complex(0.1, 0.0);
  SpectralScalarField da = apply_multiplier(a, MultiplierSpec::horizontal_power(1.0)).field;
  const double ratio = l2_norm(da) / l2_norm(a);
  CHECK(ratio >= 0.75 * 2.0);
  CHECK(ratio <= (8.0 / 3.0) * 2.0);
}

TEST_CASE("nonlinear term: zero input, Taylor-Green oracle, random oracle") {
  Grid3 g(8, 8, 2.0 * kPi, 2.0 * kPi);
  SpectralVectorField zero(g);
  CHECK(nonlinear_term(zero).max_abs() == 0.0);

  // 2D Taylor-Green: the advection term is a pure gradient, so -P(v.grad v)=0
  SpectralVectorField tg = taylor_green(g);
  SpectralVectorField ntg = nonlinear_term(tg);
  SpectralVectorField otg = oracle_nonlinear(tg);
  CHECK(ntg.max_abs() <= 1e-10 * tg.max_abs());
  SpectralVectorField dtg = ntg - otg;
  CHECK(dtg.max_abs() <= 1e-10 * tg.max_abs());

  // random divergence-free data vs the direct-summation convolution oracle
  SpectralEnvelope env{0.5, 1.0, 1.5, 1.0, 77};
  SpectralVectorField v = generate(env, g, 0.5, 4.0).field;
  SpectralVectorField nf = nonlinear_term(v);
  SpectralVectorField no = oracle_nonlinear(v);
  SpectralVectorField diff = nf - no;
  CHECK(diff.max_abs() <= 1e-10 * std::max(nf.max_abs(), 1e-300));
  CHECK(nf.divergence_residual() <= 1e-12 * std::max(nf.max_abs(), 1e-300));
  CHECK(std::abs(nf.zero_mode(0)) + std::abs(nf.zero_mode(1)) + std::abs(nf.zero_mode(2)) == 0.0);
}

TEST_CASE("energy orthogonality of the advection term on ensembles") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    SpectralEnvelope env{0.3, 1.0, 2.0, 1.0, seed};
    SpectralVectorField v = generate(env, kG, 0.5, 4.0).field;
    SpectralVectorField n = nonlinear_term(v);
    const double skew = std::abs(inner_product_real(n, v));
    CHECK(skew <= 1e-10 * l2_norm(n) * l2_norm(v));
  }
}

TEST_CASE("divergence form equals convective form on divergence-free fields") {
  SpectralEnvelope env{0.5, 1.0, 2.0, 1.0, 13};
  SpectralVectorField v = generate(env, kG, 0.5, 4.0).field;

  // convective assembly: grad v in frequency, products in physical space
  const FourierTransform& fft = fft_for(kG);
  std::array<RealField, 3> vr;
  for (int c = 0; c < 3; ++c) vr[static_cast<std::size_t>(c)] = fft.inverse(v[c]);
  SpectralVectorField conv(kG);
  for (int c = 0; c < 3; ++c) {
    RealField acc(kG);
    for (int j = 0; j < 3; ++j) {
      RealField dj = fft.inverse(derivative(v[c], j));
      for (std::size_t i = 0; i < acc.v.size(); ++i)
        acc.v[i] += vr[static_cast<std::size_t>(j)].v[i] * dj.v[i];
    }
    conv[c] = fft.forward(acc);
    conv[c] *= -1.0;
  }
  dealias_inplace(conv);
  SpectralVectorField conv_p = leray_project(conv);
  for (int c = 0; c < 3; ++c) conv_p[c].c[0] = Complex(0.0, 0.0);

  SpectralVectorField divf = nonlinear_term(v);
  SpectralVectorField diff = divf - conv_p;
  CHECK(diff.max_abs() <= 1e-11 * std::max(divf.max_abs(), 1e-300));
}

TEST_CASE("spectral product equals the direct convolution on the band") {
  Grid3 g(12, 12, 2.0 * kPi, 2.0 * kPi);
  SpectralScalarField a = random_spectral_field(g, 3);
  SpectralScalarField b = random_spectral_field(g, 4);
  SpectralScalarField fast = spectral_product(a, b);
  SpectralScalarField slow = direct_convolution(a, b);
  SpectralScalarField diff = fast - slow;
  CHECK(diff.max_abs() <= 1e-12 * std::max(fast.max_abs(), 1e-300));
}
