#pragma once

#include "anidecay/field.hpp"
#include "anidecay/filter_bank.hpp"
#include "anidecay/initial_data.hpp"
#include "anidecay/norms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace anidecay {

enum class ViscosityMode { Anisotropic, Isotropic, LinearOnly };

std::string to_string(ViscosityMode m);
ViscosityMode viscosity_mode_from_string(const std::string& s);

struct FitWindow {
  double t0 = 5.0;
  double t1 = 50.0;
};

/// Full experiment description; the CLI parses config files into this.
struct RunConfig {
  Grid3 grid{64, 32, 64.0 * 3.14159265358979323846, 2.0 * 3.14159265358979323846};
  double dt = 1e-2;
  double t_end = 50.0;
  ViscosityMode viscosity_mode = ViscosityMode::Anisotropic;
  double output_cadence = 0.1;
  double snapshot_cadence = 0.0; ///< 0 disables snapshot storage
  bool duhamel_online = false;   ///< accumulate the v3 Duhamel split during the run
  SpectralEnvelope envelope{-0.25, 1.5, 1.5, 1.0, 1};
  double target_c0 = 0.05;       ///< rescale data to this B^{0,1/2} norm; 0 keeps amplitude
  double s = 0.5;
  double s1 = 4.0;
  FitWindow fit;
  double cfl_safety = 0.5;
  double blowup_factor = 1e6;
};

/// One output-cadence row of monitored quantities (all squared-norm columns
/// carry the paper's squared convention; see series_io.hpp for the CSV order).
struct SeriesRow {
  double t = 0.0;
  double l2_sq = 0.0;
  double vh_l2_sq = 0.0;
  double v3_l2_sq = 0.0;
  double grad_h_l2_sq = 0.0;
  double grad_h_v3_l2_sq = 0.0;
  double d3v_l2_sq = 0.0;
  double d3v_hneg_half_sq = 0.0;
  double d3v_hpos_half_sq = 0.0;
  double d3sq_l2_sq = 0.0;
  double hneg_s_sq = 0.0;
  double grad_h_hneg_s_sq = 0.0;
  double hneg_mixed_sq = 0.0;
  double h0s1_sq = 0.0;
  double b0half = 0.0;
  double grad_h_b0half = 0.0;
  double lap_h_l2_sq = 0.0;
  double div_h_vh_l2_sq = 0.0;
  double khzero_energy = 0.0;
  double diss_integral = 0.0; ///< RK4-accumulated integral of the active dissipation norm
  double vinf = 0.0;
  double duhamel_res = std::numeric_limits<double>::quiet_NaN();
};

struct VectorSnapshot {
  double t = 0.0;
  SpectralVectorField v;
};

struct TrajectoryRecord {
  RunConfig config;
  InitialDataReport initial_report;
  std::vector<SeriesRow> rows;
  std::vector<VectorSnapshot> snapshots;
  std::vector<std::string> warnings;
  double divergence_residual_max = 0.0;
};

/// One IF-RK4 integrator instance: the viscous symbol is exponentiated
/// exactly, the advection term is evaluated pseudo-spectrally. A Stepper owns
/// no field state; step() is pure.
class Stepper {
public:
  Stepper(const Grid3& grid, ViscosityMode mode, double dt);

  double dt() const { return dt_; }
  ViscosityMode mode() const { return mode_; }

  /// Advances one step. Throws BlowUpError (with the time stamp) on NaN/Inf.
  /// diss_accum, when given, is advanced by the RK4 quadrature of the active
  /// dissipation norm over the step.
  SpectralVectorField step(const SpectralVectorField& v, double t_now,
                           double* diss_accum = nullptr) const;

  /// Dissipation functional 2*||grad_* v||^2 matching the viscous symbol.
  double dissipation_rate(const SpectralVectorField& v) const;

private:
  Grid3 grid_;
  ViscosityMode mode_;
  double dt_;
  std::vector<double> e_half_, e_full_; // per-mode semigroup factors
  SpectralVectorField apply_semigroup(const SpectralVectorField& v,
                                      const std::vector<double>& e) const;
};

/// Integrates config.t_end / config.dt steps from generated (or supplied)
/// data, recording the norm battery at the output cadence. Deterministic
/// given the config. Throws BlowUpError on detector trip.
TrajectoryRecord run(const RunConfig& config);
TrajectoryRecord run_from(const SpectralVectorField& v0, const RunConfig& config);

/// Energy-identity residuals r(t) = |E(t) + 2 int ||grad_h v||^2 - E(0)|/E(0):
/// once with trapezoid quadrature on the cadence grid (with an a posteriori
/// bound on the trapezoid error from second differences) and once from the
/// in-step RK4 ledger.
struct EnergyBudget {
  std::vector<double> t;
  std::vector<double> residual_trapezoid;
  std::vector<double> trapezoid_bound;
  std::vector<double> residual_ledger;
};
EnergyBudget energy_budget(const TrajectoryRecord& record);

/// Time series of every factor norm appearing in the a priori differential
/// inequalities for grad_h v, d3 v in H^{-1/2,0} and v in H^{-s,0}
/// (left-hand sides and right-hand-side factors; the unknown universal
/// constants are never asserted).
struct AprioriRow {
  double t = 0.0;
  // d/dt columns use centered differences of the recorded series
  double ddt_grad_h_l2_sq = 0.0, laph_diss = 0.0, rhs_gradh_besov_sq = 0.0,
         rhs_d3_hpos_sq = 0.0, gradh_l2_sq = 0.0;
  double ddt_d3_hneg_sq = 0.0, d3_hpos_sq = 0.0, rhs_mixed_factor = 0.0, d3_hneg_sq = 0.0;
  double ddt_hneg_s_sq = 0.0, gradh_hneg_s_sq = 0.0, rhs_besov_combo = 0.0, hneg_s_sq = 0.0;
};
std::vector<AprioriRow> apriori_monitor(const TrajectoryRecord& record);

/// Norm battery used by the solver loop (exposed for tests/diagnostics).
SeriesRow compute_norm_row(const SpectralVectorField& v, double t, double s, double s1,
                           const DyadicFilterBank& vbank);

} // namespace anidecay
