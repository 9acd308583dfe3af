#include "anidecay/decay_fit.hpp"

#include "anidecay/errors.hpp"
#include "anidecay/series_io.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace anidecay {

DecayFit fit_power_law(const std::vector<double>& t, const std::vector<double>& y, double t0,
                       double t1, const std::string& quantity) {
  if (t.size() != y.size()) throw DimensionError("fit_power_law: length mismatch");
  if (!(t0 < t1)) throw ParameterError("fit_power_law: requires t0 < t1");

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t0 || t[i] > t1) continue;
    if (!(t[i] > 0.0)) throw ParameterError("fit_power_law: nonpositive time in window");
    if (!(y[i] > 0.0))
      throw ParameterError("fit_power_law: nonpositive sample at t = " + std::to_string(t[i]));
    xs.push_back(std::log(t[i]));
    ys.push_back(std::log(y[i]));
  }
  const std::size_t n = xs.size();
  if (n < 10)
    throw ParameterError("fit_power_law: window [" + std::to_string(t0) + ", " +
                         std::to_string(t1) + "] holds " + std::to_string(n) +
                         " samples; need >= 10");

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw ParameterError("fit_power_law: degenerate window (single time)");

  DecayFit fit;
  fit.quantity = quantity;
  fit.t0 = t0;
  fit.t1 = t1;
  fit.n_samples = static_cast<int>(n);
  fit.exponent = sxy / sxx;
  const double ssr = std::max(0.0, syy - fit.exponent * sxy);
  fit.stderr_exponent = n > 2 ? std::sqrt(ssr / (static_cast<double>(n - 2) * sxx)) : 0.0;
  fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

double infrared_validity_bound(const Grid3& grid) {
  const double r = grid.l_h / (2.0 * std::numbers::pi);
  return r * r / 4.0;
}

DecayFit fit_series(const TrajectoryRecord& record, const std::string& column) {
  const double ir = infrared_validity_bound(record.config.grid);
  const double t0 = record.config.fit.t0;
  const double t1 = std::min(record.config.fit.t1, ir);
  std::vector<double> t, y;
  t.reserve(record.rows.size());
  y.reserve(record.rows.size());
  for (const auto& row : record.rows) {
    t.push_back(row.t);
    y.push_back(series_value(row, column));
  }
  DecayFit fit = fit_power_law(t, y, t0, t1, column);
  fit.ir_bound = ir;
  double frac = 0.0;
  for (const auto& row : record.rows) {
    if (row.t < t0 || row.t > t1 || row.l2_sq <= 0.0) continue;
    frac = std::max(frac, row.khzero_energy / row.l2_sq);
  }
  fit.excluded_plane_fraction = frac;
  return fit;
}

AcceptanceReport acceptance(const TrajectoryRecord& record, double tolerance,
                            double gap_tolerance) {
  const double s = record.config.s;
  AcceptanceReport rep;
  rep.s = s;
  rep.s1 = record.config.s1;
  rep.tolerance = tolerance;
  rep.gap_tolerance = gap_tolerance;
  rep.ir_bound = infrared_validity_bound(record.config.grid);
  rep.t0 = record.config.fit.t0;
  rep.t1 = std::min(record.config.fit.t1, rep.ir_bound);

  struct Spec {
    const char* column;
    double target;
    bool informational;
    const char* label;
  };
  const Spec specs[] = {
      {"l2_sq", -s, false, "l2_sq"},
      {"grad_h_l2_sq", -(s + 1.0), false, "grad_h_l2_sq"},
      {"d3v_l2_sq", -0.5, false, "d3v_l2_sq"},
      {"v3_l2_sq", -(1.5 * s + 0.25), false, "v3_l2_sq"},
      {"grad_h_v3_l2_sq", -(1.5 * s + 1.25), false, "grad_h_v3_l2_sq"},
      {"v3_l2_sq", -1.5 * s, true, "v3_l2_sq(alt-norm)"},
      {"grad_h_v3_l2_sq", -(1.5 * s + 1.0), true, "grad_h_v3_l2_sq(alt-norm)"},
  };

  bool all = true;
  double v3_exp = 0.0, vh_exp = 0.0;
  for (const auto& sp : specs) {
    DecayFit fit = fit_series(record, sp.column);
    rep.excluded_plane_fraction = std::max(rep.excluded_plane_fraction,
                                           fit.excluded_plane_fraction);
    AcceptanceTarget tgt;
    tgt.quantity = sp.label;
    tgt.fitted = fit.exponent;
    tgt.target = sp.target;
    tgt.tolerance = tolerance;
    tgt.stderr_exponent = fit.stderr_exponent;
    tgt.r2 = fit.r2;
    tgt.informational = sp.informational;
    tgt.pass = fit.exponent <= sp.target + tolerance;
    if (!sp.informational) all = all && tgt.pass;
    rep.targets.push_back(tgt);
  }
  v3_exp = fit_series(record, "v3_l2_sq").exponent;
  vh_exp = fit_series(record, "vh_l2_sq").exponent;
  rep.ordering_gap_fitted = v3_exp - vh_exp;
  rep.ordering_gap_target = -(0.5 * s + 0.25);
  rep.ordering_pass = rep.ordering_gap_fitted <= rep.ordering_gap_target + gap_tolerance;
  rep.all_pass = all && rep.ordering_pass;
  return rep;
}

std::vector<SplittingRow> fourier_splitting_check(const TrajectoryRecord& record) {
  const double s = record.config.s;
  std::vector<SplittingRow> out;
  out.reserve(record.rows.size());
  for (const auto& row : record.rows) {
    SplittingRow r;
    r.t = row.t;
    r.lhs = std::sqrt(std::max(0.0, row.l2_sq - row.khzero_energy));
    const double hn = std::sqrt(row.hneg_s_sq);
    const double gh = std::sqrt(row.grad_h_l2_sq);
    r.rhs = std::pow(hn, 1.0 / (1.0 + s)) * std::pow(gh, s / (1.0 + s));
    r.slack = r.rhs - r.lhs;
    out.push_back(r);
  }
  return out;
}

ComparisonReport compare_modes(const RunConfig& config) {
  GeneratedData data = generate(config.envelope, config.grid, config.s, config.s1);
  SpectralVectorField v0 = std::move(data.field);
  if (config.target_c0 > 0.0) v0 = rescale_to_smallness(v0, config.target_c0);

  RunConfig ca = config;
  ca.viscosity_mode = ViscosityMode::Anisotropic;
  RunConfig ci = config;
  ci.viscosity_mode = ViscosityMode::Isotropic;

  ComparisonReport rep;
  rep.anisotropic = run_from(v0, ca);
  rep.isotropic = run_from(v0, ci);
  rep.v3_aniso = fit_series(rep.anisotropic, "v3_l2_sq");
  rep.vh_aniso = fit_series(rep.anisotropic, "vh_l2_sq");
  rep.v3_iso = fit_series(rep.isotropic, "v3_l2_sq");
  rep.vh_iso = fit_series(rep.isotropic, "vh_l2_sq");
  rep.energy_end_aniso = rep.anisotropic.rows.back().l2_sq;
  rep.energy_end_iso = rep.isotropic.rows.back().l2_sq;
  return rep;
}

} // namespace anidecay
