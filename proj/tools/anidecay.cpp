// anidecay: pseudo-spectral laboratory for the 3D Navier-Stokes system with
// horizontal-only dissipation. Subcommands cover data generation, time
// integration, identity verification, decay fitting and the R^3 quadrature
// tier for the linear third-component decay.

#include "anidecay/checkpoint.hpp"
#include "anidecay/decay_fit.hpp"
#include "anidecay/duhamel.hpp"
#include "anidecay/errors.hpp"
#include "anidecay/identities.hpp"
#include "anidecay/initial_data.hpp"
#include "anidecay/multipliers.hpp"
#include "anidecay/norms.hpp"
#include "anidecay/parallel.hpp"
#include "anidecay/quadrature.hpp"
#include "anidecay/run_config.hpp"
#include "anidecay/series_io.hpp"
#include "anidecay/solver.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace anidecay;
namespace fs = std::filesystem;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBlowUp = 3;

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::vector<std::string> overrides;
  std::string format = "csv";
};

RunConfig load_config(const CommonOpts& c) {
  if (c.config_path.empty()) return parse_config_text("", c.overrides);
  return parse_config_file(c.config_path, c.overrides);
}

void ensure_out(const std::string& dir) {
  if (!dir.empty() && dir != ".") fs::create_directories(dir);
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void write_manifest(const RunConfig& cfg, const std::string& out) {
  write_text_file(join(out, "manifest.json"), manifest_json(cfg));
}

int cmd_gen_data(const CommonOpts& opts) {
  RunConfig cfg = load_config(opts);
  ensure_out(opts.out_dir);
  GeneratedData data = generate(cfg.envelope, cfg.grid, cfg.s, cfg.s1);
  SpectralVectorField v0 = std::move(data.field);
  if (cfg.target_c0 > 0.0) {
    v0 = rescale_to_smallness(v0, cfg.target_c0);
    data.report = data_functionals(v0, cfg.s, cfg.s1);
  }
  write_checkpoint(join(opts.out_dir, "data.ansd"), v0, 0.0);
  write_text_file(join(opts.out_dir, "initial_report.json"), initial_report_json(data.report));
  write_manifest(cfg, opts.out_dir);
  std::cout << "gen-data: wrote data.ansd  (A_s = " << data.report.a_s
            << ", B_s = " << data.report.b_s << ", E0 = " << data.report.e0
            << ", c0 = " << data.report.c0_norm
            << ", excluded mass = " << data.report.excluded_mass << ")\n";
  return kExitPass;
}

int cmd_run(const CommonOpts& opts) {
  RunConfig cfg = load_config(opts);
  ensure_out(opts.out_dir);
  write_manifest(cfg, opts.out_dir);
  TrajectoryRecord rec = run(cfg);
  for (const auto& w : rec.warnings) std::cerr << "warning: " << w << "\n";
  write_series_csv(join(opts.out_dir, "series.csv"), rec);
  write_text_file(join(opts.out_dir, "initial_report.json"),
                  initial_report_json(rec.initial_report));
  if (opts.format == "svg-sparkline" || opts.format == "svg") {
    std::vector<double> t, y;
    for (const auto& r : rec.rows) {
      t.push_back(r.t);
      y.push_back(r.v3_l2_sq);
    }
    write_text_file(join(opts.out_dir, "v3_l2_sq.svg"), sparkline_svg(t, y, "v3_l2_sq"));
  }
  std::cout << "run: " << rec.rows.size() << " rows to " << join(opts.out_dir, "series.csv")
            << " (max divergence residual " << rec.divergence_residual_max << ")\n";
  return kExitPass;
}

int cmd_verify_linear(const CommonOpts& opts) {
  // Integrating-factor exactness: 10^3 linear-only steps on a 32^3 grid must
  // match e^{-t |k_h|^2} vhat0 per mode to relative 1e-12.
  RunConfig cfg = load_config(opts);
  Grid3 g = opts.config_path.empty() && opts.overrides.empty()
                ? Grid3(32, 32, 2.0 * std::numbers::pi, 2.0 * std::numbers::pi)
                : cfg.grid;
  const double dt = 1e-3;
  const int steps = 1000;
  GeneratedData data = generate(SpectralEnvelope{0.5, 1.0, 3.0, 1.0, cfg.envelope.seed}, g,
                                cfg.s, cfg.s1);
  SpectralVectorField v = data.field;
  const SpectralVectorField v0 = v;
  Stepper stepper(g, ViscosityMode::LinearOnly, dt);
  for (int n = 0; n < steps; ++n) v = stepper.step(v, n * dt);
  const double t = steps * dt;

  double worst = 0.0;
  for (int c = 0; c < 3; ++c) {
    SpectralScalarField exact = apply_multiplier(v0[c], MultiplierSpec::horizontal_heat(t)).field;
    exact -= v[c];
    const double scale = v0[c].max_abs();
    if (scale > 0.0) worst = std::max(worst, exact.max_abs() / scale);
  }
  const bool pass = worst <= 1e-12;
  std::cout << (pass ? "PASS" : "FAIL") << "  verify-linear: max relative error " << worst
            << " over " << steps << " steps (limit 1e-12)\n";
  return pass ? kExitPass : kExitCheckFailure;
}

int cmd_verify_identities(const CommonOpts& opts, int n_grid, bool corrupt) {
  (void)opts;
  IdentitySuiteOptions io;
  io.n_h = n_grid;
  io.n_v = n_grid;
  io.corrupt_filter_bank = corrupt;
  const auto start = std::chrono::steady_clock::now();
  IdentitySuiteReport rep = verify_identities(io);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << identity_report_text(rep);
  std::cout << "elapsed: " << secs << " s\n";
  return rep.all_pass ? kExitPass : kExitCheckFailure;
}

int cmd_fit(const std::string& in, const std::string& quantity, double t0, double t1,
            const std::string& out_dir, const std::string& format) {
  CsvTable table = read_csv(in);
  DecayFit fit =
      fit_power_law(table.column_values("t"), table.column_values(quantity), t0, t1, quantity);
  const std::string js = decay_fit_json(fit);
  std::cout << js;
  if (!out_dir.empty() && out_dir != "-") {
    ensure_out(out_dir);
    write_text_file(join(out_dir, "fit_" + quantity + ".json"), js);
    if (format == "svg-sparkline" || format == "svg")
      write_text_file(join(out_dir, "fit_" + quantity + ".svg"),
                      sparkline_svg(table.column_values("t"), table.column_values(quantity),
                                    quantity));
  }
  return kExitPass;
}

int cmd_report(const CommonOpts& opts, const std::string& in, double tolerance,
               double gap_tolerance) {
  RunConfig cfg = load_config(opts);
  ensure_out(opts.out_dir);
  TrajectoryRecord rec;
  if (!in.empty()) {
    rec = record_from_csv(read_csv(in), cfg);
  } else {
    rec = run(cfg);
    write_series_csv(join(opts.out_dir, "series.csv"), rec);
  }
  AcceptanceReport rep = acceptance(rec, tolerance, gap_tolerance);
  write_text_file(join(opts.out_dir, "acceptance.json"), acceptance_json(rep));
  write_text_file(join(opts.out_dir, "acceptance.txt"), acceptance_text(rep));
  write_manifest(cfg, opts.out_dir);
  std::cout << acceptance_text(rep);
  return rep.all_pass ? kExitPass : kExitCheckFailure;
}

int cmd_compare(const CommonOpts& opts) {
  RunConfig cfg = load_config(opts);
  ensure_out(opts.out_dir);
  ComparisonReport rep = compare_modes(cfg);
  write_series_csv(join(opts.out_dir, "series_anisotropic.csv"), rep.anisotropic);
  write_series_csv(join(opts.out_dir, "series_isotropic.csv"), rep.isotropic);
  write_manifest(cfg, opts.out_dir);
  std::cout << "compare (window [" << rep.v3_aniso.t0 << ", " << rep.v3_aniso.t1 << "]):\n"
            << "  anisotropic: exponent(v3^2) = " << rep.v3_aniso.exponent
            << ", exponent(vh^2) = " << rep.vh_aniso.exponent << "\n"
            << "  isotropic:   exponent(v3^2) = " << rep.v3_iso.exponent
            << ", exponent(vh^2) = " << rep.vh_iso.exponent << "\n"
            << "  E(t_end): anisotropic " << rep.energy_end_aniso << ", isotropic "
            << rep.energy_end_iso << "\n";
  const bool ordered = rep.energy_end_iso < rep.energy_end_aniso;
  std::cout << (ordered ? "PASS" : "FAIL")
            << "  isotropic run dissipates strictly more energy\n";
  return ordered ? kExitPass : kExitCheckFailure;
}

int cmd_linear_decay(const CommonOpts& opts, double a_h, double b_v, bool div_free, double s,
                     double t_lo, double t_hi, int n_times) {
  ensure_out(opts.out_dir);
  QuadratureProfile prof{a_h, b_v, div_free};
  if (div_free) check_profile_membership(prof, s);
  std::vector<double> times;
  for (int i = 0; i < n_times; ++i)
    times.push_back(t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (n_times - 1)));
  DecaySeries series = linear_decay_quadrature(prof, times);
  std::ostringstream csv;
  csv << "t,total_sq,a1_sq,a2_sq\n";
  for (std::size_t i = 0; i < times.size(); ++i)
    csv << format_double(series.t[i]) << "," << format_double(series.total_sq[i]) << ","
        << format_double(series.a1_sq[i]) << "," << format_double(series.a2_sq[i]) << "\n";
  write_text_file(join(opts.out_dir, "linear_decay.csv"), csv.str());
  DecayFit fit = fit_power_law(series.t, series.total_sq, t_lo, t_hi, "v3_linear_sq");
  write_text_file(join(opts.out_dir, "linear_decay_fit.json"), decay_fit_json(fit));
  std::cout << decay_fit_json(fit);
  if (div_free) {
    const double target = -(1.5 * s + 0.25);
    const bool pass = fit.exponent <= target + 0.05;
    std::cout << (pass ? "PASS" : "FAIL") << "  fitted " << fit.exponent
              << " <= theorem bound " << target << " + 0.05\n";
    return pass ? kExitPass : kExitCheckFailure;
  }
  return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"anidecay: anisotropic Navier-Stokes decay laboratory"};
  app.require_subcommand(1);
  app.fallthrough(); // global flags may follow the subcommand

  int threads = 0;
  app.add_option("--threads", threads, "worker threads (env ANIDECAY_THREADS as fallback)");

  CommonOpts gen, runo, vlin, rep, cmp, lind;
  const auto add_common = [](CLI::App* sub, CommonOpts& c) {
    sub->add_option("--config", c.config_path, "config file path");
    sub->add_option("--out", c.out_dir, "output directory");
    sub->add_option("--set", c.overrides, "key=value override (repeatable)");
    sub->add_option("--format", c.format, "output format: csv | json | svg-sparkline");
  };

  auto* sub_gen = app.add_subcommand("gen-data", "generate divergence-free initial data");
  add_common(sub_gen, gen);

  auto* sub_run = app.add_subcommand("run", "integrate the system and record norms");
  add_common(sub_run, runo);

  auto* sub_vlin = app.add_subcommand("verify-linear", "integrating-factor exactness check");
  add_common(sub_vlin, vlin);

  auto* sub_vid = app.add_subcommand("verify-identities", "run the identity/property suite");
  int vid_n = 16;
  bool vid_corrupt = false;
  sub_vid->add_option("--n", vid_n, "grid size per axis");
  sub_vid->add_flag("--inject-filter-corruption", vid_corrupt)->group("");

  auto* sub_fit = app.add_subcommand("fit", "fit a power law to a series column");
  std::string fit_in, fit_quantity = "v3_l2_sq", fit_out = "-", fit_format = "json";
  double fit_t0 = 5.0, fit_t1 = 50.0;
  sub_fit->add_option("--in", fit_in, "series csv")->required();
  sub_fit->add_option("--quantity", fit_quantity, "column to fit");
  sub_fit->add_option("--t0", fit_t0, "window start");
  sub_fit->add_option("--t1", fit_t1, "window end");
  sub_fit->add_option("--out", fit_out, "output directory ('-' = stdout only)");
  sub_fit->add_option("--format", fit_format, "json | svg-sparkline");

  auto* sub_rep = app.add_subcommand("report", "acceptance report against the decay targets");
  add_common(sub_rep, rep);
  std::string rep_in;
  double rep_tol = 0.15, rep_gap_tol = 0.25;
  sub_rep->add_option("--in", rep_in, "existing series csv (otherwise runs the config)");
  sub_rep->add_option("--tolerance", rep_tol, "one-sided exponent tolerance");
  sub_rep->add_option("--gap-tolerance", rep_gap_tol, "ordering-gap tolerance");

  auto* sub_cmp = app.add_subcommand("compare", "anisotropic vs isotropic on identical data");
  add_common(sub_cmp, cmp);

  auto* sub_lind = app.add_subcommand("linear-decay",
                                      "R^3 quadrature of the linear v3 decay");
  add_common(sub_lind, lind);
  double ld_ah = 0.5, ld_bv = 0.0, ld_s = 0.5, ld_tlo = 10.0, ld_thi = 1000.0;
  bool ld_divfree = false;
  int ld_n = 40;
  sub_lind->add_option("--a-h", ld_ah, "horizontal profile exponent");
  sub_lind->add_option("--b-v", ld_bv, "vertical profile exponent");
  sub_lind->add_flag("--div-free", ld_divfree, "divergence-free construction");
  sub_lind->add_option("--s", ld_s, "regularity index for the theorem bound");
  sub_lind->add_option("--t-lo", ld_tlo, "first time");
  sub_lind->add_option("--t-hi", ld_thi, "last time");
  sub_lind->add_option("--n-times", ld_n, "number of log-spaced times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (threads <= 0) {
    if (const char* env = std::getenv("ANIDECAY_THREADS")) threads = std::atoi(env);
  }
  par::set_threads(threads > 0 ? threads : 1);

  try {
    if (sub_gen->parsed()) return cmd_gen_data(gen);
    if (sub_run->parsed()) return cmd_run(runo);
    if (sub_vlin->parsed()) return cmd_verify_linear(vlin);
    if (sub_vid->parsed()) return cmd_verify_identities({}, vid_n, vid_corrupt);
    if (sub_fit->parsed()) return cmd_fit(fit_in, fit_quantity, fit_t0, fit_t1, fit_out, fit_format);
    if (sub_rep->parsed()) return cmd_report(rep, rep_in, rep_tol, rep_gap_tol);
    if (sub_cmp->parsed()) return cmd_compare(cmp);
    if (sub_lind->parsed())
      return cmd_linear_decay(lind, ld_ah, ld_bv, ld_divfree, ld_s, ld_tlo, ld_thi, ld_n);
  } catch (const BlowUpError& e) {
    std::cerr << "blow-up: " << e.what() << "\n";
    return kExitBlowUp;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitUsage;
}
