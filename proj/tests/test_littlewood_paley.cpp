#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anidecay/errors.hpp"
#include "anidecay/filter_bank.hpp"
#include "anidecay/norms.hpp"
#include "anidecay/paraproduct.hpp"

#include "support/test_helpers.hpp"

#include <cmath>
#include <numbers>

using namespace anidecay;
using namespace anidecay::testing;

namespace {
const double kPi = std::numbers::pi;
const Grid3 kG(16, 16, 2.0 * kPi, 2.0 * kPi);
}

TEST_CASE("cutoff supports and specific values") {
  CHECK(dyadic_chi(0.5) == 1.0);
  CHECK(dyadic_phi(0.5) == 0.0);
  CHECK(dyadic_phi(0.75) == 0.0);
  CHECK(dyadic_phi(8.0 / 3.0) == 0.0);
  CHECK(dyadic_phi(1.0) > 0.0);
  CHECK(dyadic_phi(2.0) > 0.0);
  CHECK(dyadic_chi(4.0 / 3.0) == 0.0);
  CHECK(dyadic_chi(2.0) == 0.0);
  // phi(1) + phi(2) telescopes the partition at tau = 1
  CHECK(std::abs(dyadic_phi(1.0) + dyadic_phi(2.0) - 1.0) <= 1e-14);
}

TEST_CASE("partition of unity and homogeneous identity on dense samples") {
  double worst = 0.0;
  for (int i = 1; i <= 10000; ++i) {
    const double tau = 50.0 * i / 10000.0;
    double s = dyadic_chi(tau);
    for (int j = 0; 0.75 * std::ldexp(1.0, j) < tau; ++j) s += dyadic_phi(std::ldexp(tau, -j));
    worst = std::max(worst, std::abs(s - 1.0));
  }
  CHECK(worst <= 1e-12);

  double worst_h = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double tau = 0.5 + 40.0 * i / 10000.0;
    double s = 0.0;
    for (int j = -5; j <= 9; ++j) s += dyadic_phi(std::ldexp(tau, -j));
    worst_h = std::max(worst_h, std::abs(s - 1.0));
  }
  CHECK(worst_h <= 1e-12);
}

TEST_CASE("bank construction errors") {
  CHECK_THROWS_AS(DyadicFilterBank(kG, Direction::Vertical, 3, 3), ParameterError);
  // bands entirely above the lattice range must be refused, naming the max
  const int feasible = max_feasible_block(kG, Direction::Vertical);
  try {
    DyadicFilterBank bank(kG, Direction::Vertical, 0, feasible + 2);
    CHECK(false);
  } catch (const ParameterError& e) {
    CHECK(std::string(e.what()).find(std::to_string(feasible)) != std::string::npos);
  }
  DyadicFilterBank ok(kG, Direction::Vertical, -2, feasible);
  CHECK(ok.covers(feasible));
  CHECK_FALSE(ok.covers(feasible + 1));
}

TEST_CASE("dyadic block weights and supports") {
  DyadicFilterBank bank = DyadicFilterBank::covering(kG, Direction::Vertical);
  // single mode at |k_3| = 2^j passes Delta_j with weight phi(1)
  const int j = 2; // |k_3| = 4
  SpectralScalarField a = single_mode(kG, 1, 0, 4, Complex(1.0, 0.0));
  SpectralScalarField d = dyadic_block(a, bank, BlockKind::Delta, j);
  CHECK(std::abs(d.mode(1, 0, 4) - dyadic_phi(1.0) * a.mode(1, 0, 4)) <= 1e-15);

  // horizontal block of a purely vertical field vanishes for every j
  DyadicFilterBank hbank = DyadicFilterBank::covering(kG, Direction::Horizontal);
  SpectralScalarField vert = single_mode(kG, 0, 0, 3, Complex(0.5, 0.25));
  for (int jj = hbank.j_min(); jj <= hbank.j_max(); ++jj)
    CHECK(dyadic_block(vert, hbank, BlockKind::Delta, jj).max_abs() == 0.0);

  // block output lives in the dyadic annulus
  SpectralScalarField r = random_spectral_field(kG, 3, false);
  SpectralScalarField blk = dyadic_block(r, bank, BlockKind::Delta, j);
  const double lo = 0.75 * std::ldexp(1.0, j), hi = (8.0 / 3.0) * std::ldexp(1.0, j);
  for (int i3 = 0; i3 < kG.n_v; ++i3)
    for (int i2 = 0; i2 < kG.n_h; ++i2)
      for (int i1 = 0; i1 < kG.n_h; ++i1) {
        if (std::abs(blk.at(i1, i2, i3)) == 0.0) continue;
        const double rad = bank.radius(i1, i2, i3);
        CHECK(rad > lo);
        CHECK(rad < hi);
      }

  CHECK_THROWS_AS((void)dyadic_block(r, bank, BlockKind::Delta, bank.j_max() + 1),
                  ParameterError);
}

TEST_CASE("block reconstruction on random fields") {
  for (Direction dir : {Direction::Vertical, Direction::Horizontal}) {
    DyadicFilterBank bank = DyadicFilterBank::covering(kG, dir);
    SpectralScalarField a = random_spectral_field(kG, 17, false);
    SpectralScalarField sum = dyadic_block(a, bank, BlockKind::SLow, bank.j_min());
    for (int j = bank.j_min(); j <= bank.j_max(); ++j)
      sum += dyadic_block(a, bank, BlockKind::Delta, j);
    sum -= a;
    CHECK(sum.max_abs() <= 1e-10 * a.max_abs());
  }
}

TEST_CASE("Bony decomposition reconstructs the product") {
  DyadicFilterBank bank = DyadicFilterBank::covering(kG, Direction::Horizontal);
  const FourierTransform& fft = fft_for(kG);

  const auto product = [&](const SpectralScalarField& x, const SpectralScalarField& y) {
    RealField rx = fft.inverse(x), ry = fft.inverse(y);
    RealField p(kG);
    for (std::size_t i = 0; i < p.v.size(); ++i) p.v[i] = rx.v[i] * ry.v[i];
    return fft.forward(p);
  };

  SUBCASE("random fields") {
    SpectralScalarField f = random_spectral_field(kG, 21, false);
    SpectralScalarField g = random_spectral_field(kG, 22, false);
    BonySplit split = bony_decompose(f, g, bank);
    SpectralScalarField sum = split.t_fg;
    sum += split.t_gf;
    sum += split.remainder;
    sum += split.low_block;
    sum -= product(f, g);
    CHECK(sum.max_abs() <= 1e-10 * product(f, g).max_abs());
  }

  SUBCASE("constant f reduces to low-block bookkeeping") {
    SpectralScalarField f(kG);
    f.c[0] = Complex(3.0, 0.0);
    SpectralScalarField g = random_spectral_field(kG, 23, false);
    BonySplit split = bony_decompose(f, g, bank);
    const double scale = 3.0 * g.max_abs();
    CHECK(split.t_gf.max_abs() <= 1e-12 * scale);
    CHECK(split.remainder.max_abs() <= 1e-12 * scale);
    SpectralScalarField sum = split.t_fg;
    sum += split.t_gf;
    sum += split.remainder;
    sum += split.low_block;
    sum -= product(f, g);
    CHECK(sum.max_abs() <= 1e-10 * scale);
  }

  SUBCASE("separated spectra kill the reversed paraproduct") {
    // f low-frequency only, g far above: T_g f sees S_{k-1} g = 0
    SpectralScalarField f = single_mode(kG, 1, 0, 0, Complex(1.0, 0.0));
    SpectralScalarField g = single_mode(kG, 5, 1, 0, Complex(0.0, 1.0));
    BonySplit split = bony_decompose(f, g, bank);
    SpectralScalarField fg = product(f, g);
    CHECK(split.t_gf.max_abs() <= 1e-8 * fg.max_abs());
  }
}

TEST_CASE("paraproduct pieces obey the support offsets") {
  // f in the low ball, g banded at j: S_{k-1} f Delta_k g stays in an
  // annulus comparable to 2^j. Small supports keep the grid alias-free.
  Grid3 g(32, 16, 2.0 * kPi, 2.0 * kPi);
  DyadicFilterBank bank = DyadicFilterBank::covering(g, Direction::Horizontal);
  SpectralScalarField lowf = single_mode(g, 1, 0, 1, Complex(0.7, 0.1));
  const int j = 2;
  SpectralScalarField band(g);
  band.mode(4, 0, 2) = Complex(0.2, 0.4); // |k_h| = 4 inside band 2
  band.mode(-4, 0, -2) = Complex(0.2, -0.4);
  BonySplit split = bony_decompose(lowf, band, bank);
  const double lo = std::ldexp(1.0, j) / 12.0;
  const double hi = std::ldexp(1.0, j) * 10.0 / 3.0;
  const double scale = split.t_fg.max_abs();
  REQUIRE(scale > 0.0);
  for (int i3 = 0; i3 < g.n_v; ++i3)
    for (int i2 = 0; i2 < g.n_h; ++i2)
      for (int i1 = 0; i1 < g.n_h; ++i1) {
        if (std::abs(split.t_fg.at(i1, i2, i3)) <= 1e-12 * scale) continue;
        const double rad = bank.radius(i1, i2, i3);
        CHECK(rad >= lo);
        CHECK(rad <= hi);
      }
}

TEST_CASE("dyadic commutator") {
  DyadicFilterBank bank = DyadicFilterBank::covering(kG, Direction::Vertical);
  const int j = bank.j_min() + 3;

  SpectralScalarField cst(kG);
  cst.c[0] = Complex(-1.75, 0.0);
  SpectralScalarField g = random_spectral_field(kG, 41);
  CHECK(dyadic_commutator(j, cst, g, bank).max_abs() <= 1e-12 * g.max_abs());

  SpectralScalarField zero(kG);
  SpectralScalarField f = random_spectral_field(kG, 42);
  CHECK(dyadic_commutator(j, f, zero, bank).max_abs() == 0.0);

  // scaling sweep: || [Delta_l, f] g || / (2^-l  ||grad f||_inf ||g||_L2)
  // recorded over l; bounded by a calibrated constant, not asserted a priori
  Grid3 gg(16, 32, 2.0 * kPi, 2.0 * kPi);
  DyadicFilterBank vb = DyadicFilterBank::covering(gg, Direction::Vertical);
  SpectralScalarField fsm(gg);
  fsm.mode(1, 0, 1) = Complex(0.5, 0.0);
  fsm.mode(-1, 0, -1) = Complex(0.5, 0.0);
  fsm.mode(0, 1, 1) = Complex(0.0, 0.3);
  fsm.mode(0, -1, -1) = Complex(0.0, -0.3);
  // grad f in physical space for the infinity norm
  const FourierTransform& fft = fft_for(gg);
  double gradf_inf = 0.0;
  {
    RealField g1 = fft.inverse(derivative(fsm, 0));
    RealField g2 = fft.inverse(derivative(fsm, 1));
    RealField g3 = fft.inverse(derivative(fsm, 2));
    for (std::size_t i = 0; i < g1.v.size(); ++i)
      gradf_inf = std::max(gradf_inf,
                           std::hypot(std::hypot(g1.v[i], g2.v[i]), g3.v[i]));
  }
  double ratio_max = 0.0, ratio_min = 1e300;
  for (int l = 1; l <= 3; ++l) {
    SpectralScalarField osc(gg);
    const int m3 = 1 << l;
    osc.mode(1, 0, m3) = Complex(0.3, 0.6);
    osc.mode(-1, 0, -m3) = Complex(0.3, -0.6);
    SpectralScalarField comm = dyadic_commutator(l, fsm, osc, vb);
    const double ratio = l2_norm(comm) / (std::ldexp(1.0, -l) * gradf_inf * l2_norm(osc));
    ratio_max = std::max(ratio_max, ratio);
    ratio_min = std::min(ratio_min, ratio);
  }
  CHECK(ratio_max < 50.0);         // calibrated bound for this fixture
  CHECK(ratio_max / std::max(ratio_min, 1e-12) < 100.0);
}

TEST_CASE("Bernstein band ratios") {
  DyadicFilterBank bank = DyadicFilterBank::covering(kG, Direction::Horizontal);

  // single mode |k_h| = 2^j: ratio exactly 2^{j |alpha|}
  SpectralScalarField one = single_mode(kG, 4, 0, 1, Complex(1.0, 2.0));
  BernsteinReport r1 = bernstein_check(one, bank, 2, 1);
  CHECK(rel_err(r1.ratio, 4.0) <= 1e-12);
  CHECK(r1.inside);
  BernsteinReport r2 = bernstein_check(one, bank, 2, 2);
  CHECK(rel_err(r2.ratio, 16.0) <= 1e-12);
  CHECK(r2.inside);

  // random banded fields, orders 1 and 2, both directions
  for (int j = 1; j <= 2; ++j) {
    SpectralScalarField a(kG);
    std::mt19937_64 rng(100 + static_cast<std::uint64_t>(j));
    const double lo = 0.75 * std::ldexp(1.0, j), hi = (8.0 / 3.0) * std::ldexp(1.0, j);
    for (int m2 = -5; m2 <= 5; ++m2)
      for (int m1 = -5; m1 <= 5; ++m1) {
        const double rad = std::hypot(double(m1), double(m2));
        if (rad < lo || rad > hi) continue;
        if (!(m2 > 0 || (m2 == 0 && m1 > 0))) continue;
        const Complex c(static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5,
                        static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5);
        a.mode(m1, m2, 1) = c;
        a.mode(-m1, -m2, -1) = std::conj(c);
      }
    for (int order = 1; order <= 2; ++order) {
      BernsteinReport r = bernstein_check(a, bank, j, order);
      CHECK(r.inside);
      CHECK(r.ratio >= std::pow(0.75 * std::ldexp(1.0, j), order));
      CHECK(r.ratio <= std::pow(2.67 * std::ldexp(1.0, j), order));
    }
  }

  // misuse: not banded, or zero field
  SpectralScalarField wide = random_spectral_field(kG, 55);
  CHECK_THROWS_AS((void)bernstein_check(wide, bank, 2, 1), ParameterError);
  SpectralScalarField zero(kG);
  CHECK_THROWS_AS((void)bernstein_check(zero, bank, 2, 1), ParameterError);
}
