#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anidecay/errors.hpp"
#include "anidecay/multipliers.hpp"
#include "anidecay/norms.hpp"
#include "anidecay/solver.hpp"
#include "anidecay/spectral_ops.hpp"

#include "support/test_helpers.hpp"

#include <cstring>
#include <numbers>

using namespace anidecay;
using namespace anidecay::testing;

namespace {
const double kPi = std::numbers::pi;
const Grid3 kG(16, 16, 2.0 * kPi, 2.0 * kPi);

RunConfig small_config() {
  RunConfig c;
  c.grid = kG;
  c.dt = 5e-3;
  c.t_end = 1.0;
  c.output_cadence = 0.05;
  c.envelope = SpectralEnvelope{0.5, 1.0, 2.0, 1.0, 7};
  c.target_c0 = 0.05;
  c.s = 0.5;
  c.s1 = 4.0;
  return c;
}
} // namespace

TEST_CASE("zero data stays zero") {
  RunConfig cfg = small_config();
  cfg.t_end = 0.2;
  SpectralVectorField zero(kG);
  TrajectoryRecord rec = run_from(zero, cfg);
  for (const auto& row : rec.rows) {
    CHECK(row.l2_sq == 0.0);
    CHECK(row.diss_integral == 0.0);
  }
}

TEST_CASE("linear-only mode is the exact heat semigroup") {
  SpectralEnvelope env{0.5, 1.0, 2.0, 1.0, 12};
  SpectralVectorField v0 = generate(env, kG, 0.5, 4.0).field;
  Stepper stepper(kG, ViscosityMode::LinearOnly, 1e-3);
  SpectralVectorField v = v0;
  const int steps = 500;
  for (int n = 0; n < steps; ++n) v = stepper.step(v, n * 1e-3);
  const double t = steps * 1e-3;
  double worst = 0.0;
  for (int c = 0; c < 3; ++c) {
    SpectralScalarField exact =
        apply_multiplier(v0[c], MultiplierSpec::horizontal_heat(t)).field;
    exact -= v[c];
    worst = std::max(worst, exact.max_abs() / v0.max_abs());
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("one-step error drops like 2^5 under dt halving") {
  SpectralEnvelope env{0.5, 1.0, 2.0, 1.0, 21};
  SpectralVectorField v0 = generate(env, kG, 0.5, 4.0).field;
  v0 = rescale_to_smallness(v0, 0.5); // strong enough nonlinearity to matter

  const double H = 0.1;
  // reference: 32 tiny steps
  SpectralVectorField ref = v0;
  {
    Stepper fine(kG, ViscosityMode::Anisotropic, H / 32.0);
    for (int i = 0; i < 32; ++i) ref = fine.step(ref, i * H / 32.0);
  }
  const auto err_of = [&](int halvings) {
    const int n = 1 << halvings;
    Stepper st(kG, ViscosityMode::Anisotropic, H / n);
    SpectralVectorField v = v0;
    for (int i = 0; i < n; ++i) v = st.step(v, i * H / n);
    SpectralVectorField d = v - ref;
    return d.max_abs();
  };
  const double e1 = err_of(0); // one step of H
  const double e2 = err_of(1); // two steps of H/2
  // local order 5, one step vs global order 4 over two: ratio ~ 2^4..2^5
  const double ratio = e1 / e2;
  CHECK(ratio > 12.0);
  CHECK(ratio < 48.0);
}

TEST_CASE("divergence and zero mode preserved over many steps") {
  RunConfig cfg = small_config();
  TrajectoryRecord rec = run(cfg);
  CHECK(rec.divergence_residual_max <= 1e-12);
  CHECK(rec.rows.size() == 21);
  CHECK(rec.rows.back().t == doctest::Approx(1.0));
}

TEST_CASE("identical config reproduces the trajectory bit for bit") {
  RunConfig cfg = small_config();
  cfg.t_end = 0.3;
  TrajectoryRecord a = run(cfg);
  TrajectoryRecord b = run(cfg);
  REQUIRE(a.rows.size() == b.rows.size());
  CHECK(std::memcmp(a.rows.data(), b.rows.data(), a.rows.size() * sizeof(SeriesRow)) == 0);
}

TEST_CASE("energy budget closes on the linear single-mode closed form") {
  SpectralVectorField v0(kG);
  // divergence-free single mode: velocity along x2, wave along x1
  v0[1] = single_mode(kG, 2, 0, 1, Complex(0.4, 0.1));
  v0.div_free = true;

  RunConfig cfg = small_config();
  cfg.viscosity_mode = ViscosityMode::LinearOnly;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  cfg.output_cadence = 0.05;
  TrajectoryRecord rec = run_from(v0, cfg);

  // closed form: E(t) = E(0) e^{-2 |k_h|^2 t} with |k_h| = 2
  const double e0 = rec.rows.front().l2_sq;
  for (const auto& row : rec.rows)
    CHECK(rel_err(row.l2_sq, e0 * std::exp(-8.0 * row.t)) <= 1e-10);

  EnergyBudget budget = energy_budget(rec);
  for (double r : budget.residual_ledger) CHECK(r <= 1e-10);

  // zero field: identically zero budget
  SpectralVectorField z(kG);
  TrajectoryRecord zr = run_from(z, cfg);
  EnergyBudget zb = energy_budget(zr);
  for (double r : zb.residual_ledger) CHECK(r == 0.0);
}

TEST_CASE("energy budget on a nonlinear desk-scale run") {
  RunConfig cfg = small_config();
  cfg.t_end = 2.0;
  TrajectoryRecord rec = run(cfg);
  EnergyBudget budget = energy_budget(rec);
  for (std::size_t i = 0; i < budget.t.size(); ++i) {
    CHECK(budget.residual_ledger[i] <= 1e-6);
    CHECK(budget.residual_trapezoid[i] <= 1e-6 + budget.trapezoid_bound[i]);
  }
}

TEST_CASE("monitored boundedness of the propagated norms") {
  RunConfig cfg = small_config();
  cfg.t_end = 2.0;
  TrajectoryRecord rec = run(cfg);
  const double h0s1_start = rec.rows.front().h0s1_sq;
  const double d3hneg_start = rec.rows.front().d3v_hneg_half_sq;
  for (const auto& row : rec.rows) {
    CHECK(row.h0s1_sq <= 1.05 * h0s1_start);
    CHECK(row.d3v_hneg_half_sq <= 1.05 * d3hneg_start);
  }
}

TEST_CASE("isotropic dissipation beats anisotropic on identical data") {
  RunConfig cfg = small_config();
  cfg.t_end = 1.0;
  SpectralVectorField v0 = generate(cfg.envelope, kG, cfg.s, cfg.s1).field;
  v0 = rescale_to_smallness(v0, cfg.target_c0);
  RunConfig ca = cfg;
  ca.viscosity_mode = ViscosityMode::Anisotropic;
  RunConfig ci = cfg;
  ci.viscosity_mode = ViscosityMode::Isotropic;
  TrajectoryRecord ra = run_from(v0, ca);
  TrajectoryRecord ri = run_from(v0, ci);
  CHECK(ri.rows.back().l2_sq < ra.rows.back().l2_sq);
}

TEST_CASE("blow-up detector trips with a time stamp") {
  RunConfig cfg = small_config();
  cfg.envelope.amplitude = 1.0;
  cfg.target_c0 = 2000.0; // far outside the CFL and smallness regime
  cfg.dt = 0.05;
  cfg.t_end = 5.0;
  try {
    (void)run(cfg);
    CHECK(false);
  } catch (const BlowUpError& e) {
    CHECK(e.time > 0.0);
    CHECK(std::string(e.what()).find("t = ") != std::string::npos);
  }
}

TEST_CASE("CFL advisory warning at t = 0") {
  RunConfig cfg = small_config();
  cfg.target_c0 = 50.0;
  cfg.dt = 0.5;
  cfg.t_end = 0.5;
  cfg.blowup_factor = 1e30; // keep the detector quiet; we only want the advisory
  TrajectoryRecord rec = [&] {
    try {
      return run(cfg);
    } catch (const BlowUpError&) {
      return TrajectoryRecord{};
    }
  }();
  bool saw_cfl = false;
  for (const auto& w : rec.warnings) saw_cfl = saw_cfl || w.find("CFL") != std::string::npos;
  CHECK(saw_cfl);
}

TEST_CASE("a priori monitor series") {
  RunConfig cfg = small_config();
  cfg.viscosity_mode = ViscosityMode::LinearOnly;
  cfg.dt = 1e-3;
  cfg.output_cadence = 0.01;
  cfg.t_end = 0.5;
  // mild spectrum so centered differences resolve the decay
  cfg.envelope = SpectralEnvelope{0.5, 1.0, 1.0, 1.0, 5};
  TrajectoryRecord rec = run(cfg);
  std::vector<AprioriRow> mon = apriori_monitor(rec);
  REQUIRE(mon.size() > 10);
  // linear flow: d/dt ||grad_h v||^2 + 2 ||Delta_h v||^2 = 0 up to the
  // centered-difference quadrature error
  for (const auto& row : mon) {
    const double resid = std::abs(row.ddt_grad_h_l2_sq + 2.0 * row.laph_diss);
    CHECK(resid <= 5e-3 * 2.0 * row.laph_diss + 1e-14);
  }

  SpectralVectorField z(kG);
  RunConfig zc = cfg;
  TrajectoryRecord zr = run_from(z, zc);
  for (const auto& row : apriori_monitor(zr)) {
    CHECK(row.gradh_l2_sq == 0.0);
    CHECK(row.ddt_hneg_s_sq == 0.0);
  }
}
