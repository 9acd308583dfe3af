#include "anidecay/solver.hpp"

#include "anidecay/duhamel.hpp"
#include "anidecay/errors.hpp"
#include "anidecay/fft.hpp"
#include "anidecay/multipliers.hpp"
#include "anidecay/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace anidecay {

std::string to_string(ViscosityMode m) {
  switch (m) {
    case ViscosityMode::Anisotropic: return "anisotropic";
    case ViscosityMode::Isotropic: return "isotropic";
    case ViscosityMode::LinearOnly: return "linear-only";
  }
  return "?";
}

ViscosityMode viscosity_mode_from_string(const std::string& s) {
  if (s == "anisotropic") return ViscosityMode::Anisotropic;
  if (s == "isotropic") return ViscosityMode::Isotropic;
  if (s == "linear-only") return ViscosityMode::LinearOnly;
  throw ParameterError("unknown viscosity_mode '" + s +
                       "' (expected anisotropic | isotropic | linear-only)");
}

namespace {

// Viscous symbol: horizontal Laplacian except in isotropic comparison mode.
double viscous_symbol(const Grid3& g, ViscosityMode mode, int i1, int i2, int i3) {
  const double k1 = g.wavenumber(0, i1);
  const double k2 = g.wavenumber(1, i2);
  double a = k1 * k1 + k2 * k2;
  if (mode == ViscosityMode::Isotropic) {
    const double k3 = g.wavenumber(2, i3);
    a += k3 * k3;
  }
  return a;
}

std::vector<double> semigroup_table(const Grid3& g, ViscosityMode mode, double tau) {
  std::vector<double> e(g.size());
  const int nh = g.n_h, nv = g.n_v;
  const std::size_t plane = std::size_t(nh) * nh;
  par::for_range(nv, [&](std::int64_t s) {
    const int i3 = static_cast<int>(s);
    for (int i2 = 0; i2 < nh; ++i2) {
      const std::size_t row = static_cast<std::size_t>(s) * plane + std::size_t(i2) * nh;
      for (int i1 = 0; i1 < nh; ++i1)
        e[row + i1] = std::exp(-tau * viscous_symbol(g, mode, i1, i2, i3));
    }
  });
  return e;
}

void scale_add(SpectralVectorField& acc, const SpectralVectorField& x, double w,
               const std::vector<double>* e) {
  for (int c = 0; c < 3; ++c) {
    auto& a = acc[c].c;
    const auto& b = x[c].c;
    par::for_range(static_cast<std::int64_t>(a.size()), [&](std::int64_t i) {
      const auto j = static_cast<std::size_t>(i);
      a[j] += w * (e ? (*e)[j] * b[j] : b[j]);
    });
  }
}

} // namespace

Stepper::Stepper(const Grid3& grid, ViscosityMode mode, double dt)
    : grid_(grid), mode_(mode), dt_(dt) {
  if (!(dt > 0.0)) throw ParameterError("Stepper: dt must be positive");
  e_half_ = semigroup_table(grid, mode, 0.5 * dt);
  e_full_ = semigroup_table(grid, mode, dt);
}

SpectralVectorField Stepper::apply_semigroup(const SpectralVectorField& v,
                                             const std::vector<double>& e) const {
  SpectralVectorField out(v.grid);
  for (int c = 0; c < 3; ++c) {
    const auto& src = v[c].c;
    auto& dst = out[c].c;
    par::for_range(static_cast<std::int64_t>(src.size()), [&](std::int64_t i) {
      const auto j = static_cast<std::size_t>(i);
      dst[j] = e[j] * src[j];
    });
  }
  out.div_free = v.div_free;
  return out;
}

double Stepper::dissipation_rate(const SpectralVectorField& v) const {
  const Grid3& g = v.grid;
  const int nh = g.n_h;
  const std::size_t plane = std::size_t(nh) * nh;
  double sum = par::sum_slabs(g.n_v, [&](std::int64_t s) {
    const int i3 = static_cast<int>(s);
    double acc = 0.0;
    for (int i2 = 0; i2 < nh; ++i2) {
      const std::size_t row = static_cast<std::size_t>(s) * plane + std::size_t(i2) * nh;
      for (int i1 = 0; i1 < nh; ++i1) {
        const double a = viscous_symbol(g, mode_, i1, i2, i3);
        double m2 = 0.0;
        for (int c = 0; c < 3; ++c) m2 += std::norm(v[c].c[row + i1]);
        acc += a * m2;
      }
    }
    return acc;
  });
  return 2.0 * g.volume() * sum;
}

SpectralVectorField Stepper::step(const SpectralVectorField& v, double t_now,
                                  double* diss_accum) const {
  const double h = dt_;
  SpectralVectorField out(v.grid);

  if (mode_ == ViscosityMode::LinearOnly) {
    out = apply_semigroup(v, e_full_);
    if (diss_accum) {
      const SpectralVectorField mid = apply_semigroup(v, e_half_);
      *diss_accum +=
          h / 6.0 * (dissipation_rate(v) + 4.0 * dissipation_rate(mid) + dissipation_rate(out));
    }
    if (!std::isfinite(out.max_abs()))
      throw BlowUpError("solver: NaN/Inf detected at t = " + std::to_string(t_now + h), t_now + h);
    return out;
  }

  const SpectralVectorField k1 = nonlinear_term(v);

  SpectralVectorField u2 = v;
  scale_add(u2, k1, 0.5 * h, nullptr);
  u2 = apply_semigroup(u2, e_half_);
  const SpectralVectorField k2 = nonlinear_term(u2);

  SpectralVectorField u3 = apply_semigroup(v, e_half_);
  scale_add(u3, k2, 0.5 * h, nullptr);
  const SpectralVectorField k3 = nonlinear_term(u3);

  SpectralVectorField u4 = apply_semigroup(v, e_full_);
  scale_add(u4, k3, h, &e_half_);
  const SpectralVectorField k4 = nonlinear_term(u4);

  out = apply_semigroup(v, e_full_);
  scale_add(out, k1, h / 6.0, &e_full_);
  scale_add(out, k2, h / 3.0, &e_half_);
  scale_add(out, k3, h / 3.0, &e_half_);
  scale_add(out, k4, h / 6.0, nullptr);

  // projection re-applied to stop round-off drift; zero mode stays pinned
  out = leray_project(out);

  if (diss_accum) {
    *diss_accum += h / 6.0 *
                   (dissipation_rate(v) + 2.0 * dissipation_rate(u2) +
                    2.0 * dissipation_rate(u3) + dissipation_rate(u4));
  }

  const double probe = dissipation_rate(out);
  if (!std::isfinite(probe))
    throw BlowUpError("solver: NaN/Inf detected at t = " + std::to_string(t_now + h), t_now + h);
  return out;
}

// ---------------------------------------------------------------------------
// norm battery
// ---------------------------------------------------------------------------

SeriesRow compute_norm_row(const SpectralVectorField& v, double t, double s, double s1,
                           const DyadicFilterBank& vbank) {
  const Grid3& g = v.grid;
  const int nh = g.n_h, nv = g.n_v;
  const std::size_t plane = std::size_t(nh) * nh;
  const double V = g.volume();

  // horizontal weight tables, one pow battery per (i1,i2)
  std::vector<double> kh2_t(plane), khneg2s_t(plane);
  for (int i2 = 0; i2 < nh; ++i2) {
    const double k2 = g.wavenumber(1, i2);
    for (int i1 = 0; i1 < nh; ++i1) {
      const double k1 = g.wavenumber(0, i1);
      const double kh2 = k1 * k1 + k2 * k2;
      kh2_t[std::size_t(i1) + std::size_t(nh) * i2] = kh2;
      khneg2s_t[std::size_t(i1) + std::size_t(nh) * i2] = kh2 > 0.0 ? std::pow(kh2, -s) : 0.0;
    }
  }

  enum {
    L2,
    GRADH,
    D3,
    D3HNEG,
    D3HPOS,
    D3SQ,
    HNEGS,
    GRADH_HNEGS,
    HNEGMIX,
    H0S1,
    LAPH,
    KH0,
    NSUMS
  };

  double sums[3][NSUMS] = {};
  std::vector<double> pmass(static_cast<std::size_t>(nv), 0.0);  // per-i3 plane masses (all comps)
  std::vector<double> pmass_h(static_cast<std::size_t>(nv), 0.0); // |k_h|^2-weighted
  double div_h_sum = 0.0;

  for (int c = 0; c < 3; ++c) {
    std::vector<double> slab(static_cast<std::size_t>(nv) * NSUMS, 0.0);
    par::for_range(nv, [&](std::int64_t sl) {
      const int i3 = static_cast<int>(sl);
      const double k3 = g.wavenumber(2, i3);
      const double k32 = k3 * k3;
      const double k3abs = std::abs(k3);
      const double w_mix_v = k3 != 0.0 ? std::pow(k3abs, -(s + 0.5)) : 0.0;
      const double w_s1 = k3 != 0.0 ? std::pow(k3abs, 2.0 * s1) : 0.0;
      double* acc = &slab[static_cast<std::size_t>(sl) * NSUMS];
      const std::size_t base = static_cast<std::size_t>(sl) * plane;
      for (std::size_t hp = 0; hp < plane; ++hp) {
        const double m2 = std::norm(v[c].c[base + hp]);
        if (m2 == 0.0) continue;
        const double kh2 = kh2_t[hp];
        const double wneg = khneg2s_t[hp];
        acc[L2] += m2;
        acc[GRADH] += kh2 * m2;
        acc[D3] += k32 * m2;
        acc[D3SQ] += k32 * k32 * m2;
        acc[H0S1] += w_s1 * m2;
        acc[LAPH] += kh2 * kh2 * m2;
        if (kh2 > 0.0) {
          const double kh = std::sqrt(kh2);
          acc[D3HNEG] += k32 / kh * m2;
          acc[D3HPOS] += k32 * kh * m2;
          acc[HNEGS] += wneg * m2;
          acc[GRADH_HNEGS] += kh2 * wneg * m2;
          acc[HNEGMIX] += wneg * w_mix_v * m2;
        } else {
          acc[KH0] += m2;
        }
      }
    });
    for (int i3 = 0; i3 < nv; ++i3) {
      const double* acc = &slab[static_cast<std::size_t>(i3) * NSUMS];
      for (int q = 0; q < NSUMS; ++q) sums[c][q] += acc[q];
      pmass[static_cast<std::size_t>(i3)] += V * acc[L2];
      pmass_h[static_cast<std::size_t>(i3)] += V * acc[GRADH];
    }
  }

  // |div_h v^h|^2 needs the cross term, one extra pass
  div_h_sum = par::sum_slabs(nv, [&](std::int64_t sl) {
    double acc = 0.0;
    const std::size_t base = static_cast<std::size_t>(sl) * plane;
    for (int i2 = 0; i2 < nh; ++i2) {
      const double k2 = g.wavenumber_deriv(1, i2);
      for (int i1 = 0; i1 < nh; ++i1) {
        const double k1 = g.wavenumber_deriv(0, i1);
        const std::size_t idx = base + std::size_t(i2) * nh + std::size_t(i1);
        acc += std::norm(k1 * v[0].c[idx] + k2 * v[1].c[idx]);
      }
    }
    return acc;
  });

  SeriesRow row;
  row.t = t;
  const auto total = [&](int q) { return V * (sums[0][q] + sums[1][q] + sums[2][q]); };
  row.l2_sq = total(L2);
  row.vh_l2_sq = V * (sums[0][L2] + sums[1][L2]);
  row.v3_l2_sq = V * sums[2][L2];
  row.grad_h_l2_sq = total(GRADH);
  row.grad_h_v3_l2_sq = V * sums[2][GRADH];
  row.d3v_l2_sq = total(D3);
  row.d3v_hneg_half_sq = total(D3HNEG);
  row.d3v_hpos_half_sq = total(D3HPOS);
  row.d3sq_l2_sq = total(D3SQ);
  row.hneg_s_sq = total(HNEGS);
  row.grad_h_hneg_s_sq = total(GRADH_HNEGS);
  row.hneg_mixed_sq = total(HNEGMIX);
  row.h0s1_sq = total(H0S1);
  row.lap_h_l2_sq = total(LAPH);
  row.div_h_vh_l2_sq = V * div_h_sum;
  row.khzero_energy = total(KH0);

  // vertical Besov norms from the plane masses
  {
    const auto block = [&](const std::vector<double>& mass, BlockKind kind, int j) {
      const auto& w = vbank.vertical_weights(kind, j);
      double acc = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * w[i] * mass[i];
      return std::sqrt(acc);
    };
    double b = std::exp2(0.5 * vbank.j_min()) * block(pmass, BlockKind::SLow, vbank.j_min());
    double bh = std::exp2(0.5 * vbank.j_min()) * block(pmass_h, BlockKind::SLow, vbank.j_min());
    for (int j = vbank.j_min(); j <= vbank.j_max(); ++j) {
      b += std::exp2(0.5 * j) * block(pmass, BlockKind::Delta, j);
      bh += std::exp2(0.5 * j) * block(pmass_h, BlockKind::Delta, j);
    }
    row.b0half = b;
    row.grad_h_b0half = bh;
  }

  // grid max |v|
  {
    const FourierTransform& fft = fft_for(g);
    double m = 0.0;
    for (int c = 0; c < 3; ++c) m = std::max(m, fft.inverse(v[c]).max_abs());
    row.vinf = m;
  }
  return row;
}

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

namespace {

// online Duhamel accumulation state (anisotropic heat factors at cadence)
struct DuhamelTracker {
  std::vector<double> e_cad;            // e^{-Delta |k_h|^2} (or full symbol)
  SpectralScalarField v3_lin, i1, i2;   // linear part and the two integrals
  SpectralScalarField f1_prev, f2_prev; // kernels at the previous node
};

double scalar_l2(const SpectralScalarField& a) { return l2_norm(a); }

} // namespace

TrajectoryRecord run_from(const SpectralVectorField& v0, const RunConfig& config) {
  const Grid3& g = config.grid;
  if (!(v0.grid == g)) throw DimensionError("run_from: data grid differs from config grid");
  if (!(config.t_end > 0.0)) throw ParameterError("run: t_end must be positive");
  if (!(config.output_cadence > 0.0)) throw ParameterError("run: output_cadence must be positive");

  TrajectoryRecord rec;
  rec.config = config;

  SpectralVectorField v = leray_project(v0);
  dealias_inplace(v);
  rec.initial_report = data_functionals(v, config.s, config.s1);

  const DyadicFilterBank vbank = DyadicFilterBank::covering(g, Direction::Vertical);
  const Stepper stepper(g, config.viscosity_mode, config.dt);

  const auto n_steps = static_cast<long long>(std::llround(config.t_end / config.dt));
  const auto steps_per_out =
      std::max(1LL, static_cast<long long>(std::llround(config.output_cadence / config.dt)));
  if (std::abs(steps_per_out * config.dt - config.output_cadence) > 1e-9 * config.output_cadence)
    rec.warnings.push_back("output_cadence rounded to " + std::to_string(steps_per_out) +
                           " steps of dt");
  long long steps_per_snap = 0;
  if (config.snapshot_cadence > 0.0)
    steps_per_snap =
        std::max(1LL, static_cast<long long>(std::llround(config.snapshot_cadence / config.dt)));

  SeriesRow row0 = compute_norm_row(v, 0.0, config.s, config.s1, vbank);
  row0.diss_integral = 0.0;
  const double vinf0 = row0.vinf;

  // CFL advisory at t = 0
  {
    const double dx = std::min(g.l_h / g.n_h, g.l_v / g.n_v);
    if (vinf0 > 0.0 && config.dt > config.cfl_safety * dx / vinf0)
      rec.warnings.push_back("CFL advisory violated at t=0: dt > " +
                             std::to_string(config.cfl_safety * dx / vinf0));
  }

  // Duhamel online state
  DuhamelTracker duh;
  const bool track_duh = config.duhamel_online;
  const double cad = steps_per_out * config.dt;
  if (track_duh) {
    duh.e_cad = semigroup_table(g, config.viscosity_mode == ViscosityMode::Isotropic
                                       ? ViscosityMode::Isotropic
                                       : ViscosityMode::Anisotropic,
                                cad);
    duh.v3_lin = v[2];
    duh.i1 = SpectralScalarField(g);
    duh.i2 = SpectralScalarField(g);
    duh.f1_prev = SpectralScalarField(g);
    duh.f2_prev = SpectralScalarField(g);
    if (config.viscosity_mode != ViscosityMode::LinearOnly) {
      const auto w = velocity_products(v);
      duhamel_kernels_from_products(g, w, duh.f1_prev, duh.f2_prev);
    }
    row0.duhamel_res = 0.0;
  }
  rec.rows.push_back(row0);

  if (steps_per_snap > 0) rec.snapshots.push_back({0.0, v});

  double div_rel_max = 0.0;
  {
    const double scale = std::max(v.max_abs(), 1e-300);
    div_rel_max = v.divergence_residual() / scale;
  }

  double diss = 0.0;
  for (long long n = 1; n <= n_steps; ++n) {
    const double t_prev = static_cast<double>(n - 1) * config.dt;
    v = stepper.step(v, t_prev, &diss);
    const double t_now = static_cast<double>(n) * config.dt;

    if (n % steps_per_out == 0) {
      SeriesRow row = compute_norm_row(v, t_now, config.s, config.s1, vbank);
      row.diss_integral = diss;

      if (!std::isfinite(row.vinf) ||
          (vinf0 > 0.0 && row.vinf > config.blowup_factor * vinf0))
        throw BlowUpError("solver: amplitude blow-up detected at t = " + std::to_string(t_now),
                          t_now);

      const double scale = std::max(v.max_abs(), 1e-300);
      div_rel_max = std::max(div_rel_max, v.divergence_residual() / scale);

      if (track_duh) {
        // exact-semigroup trapezoid recurrence for both Duhamel integrals
        SpectralScalarField f1(g), f2(g);
        if (config.viscosity_mode != ViscosityMode::LinearOnly) {
          const auto w = velocity_products(v);
          duhamel_kernels_from_products(g, w, f1, f2);
        }
        par::for_range(static_cast<std::int64_t>(g.size()), [&](std::int64_t i) {
          const auto j = static_cast<std::size_t>(i);
          const double e = duh.e_cad[j];
          duh.i1.c[j] = e * duh.i1.c[j] + 0.5 * cad * (e * duh.f1_prev.c[j] + f1.c[j]);
          duh.i2.c[j] = e * duh.i2.c[j] + 0.5 * cad * (e * duh.f2_prev.c[j] + f2.c[j]);
          duh.v3_lin.c[j] *= e;
        });
        duh.f1_prev = std::move(f1);
        duh.f2_prev = std::move(f2);
        SpectralScalarField recon = duh.v3_lin;
        recon += duh.i1;
        recon += duh.i2;
        recon -= v[2];
        const double denom = scalar_l2(v[2]);
        row.duhamel_res = denom > 0.0 ? scalar_l2(recon) / denom : 0.0;
      }
      rec.rows.push_back(row);
    }
    if (steps_per_snap > 0 && n % steps_per_snap == 0) rec.snapshots.push_back({t_now, v});
  }
  rec.divergence_residual_max = div_rel_max;
  return rec;
}

TrajectoryRecord run(const RunConfig& config) {
  GeneratedData data = generate(config.envelope, config.grid, config.s, config.s1);
  SpectralVectorField v0 = std::move(data.field);
  if (config.target_c0 > 0.0) v0 = rescale_to_smallness(v0, config.target_c0);
  return run_from(v0, config);
}

EnergyBudget energy_budget(const TrajectoryRecord& record) {
  const auto& rows = record.rows;
  EnergyBudget out;
  if (rows.empty()) return out;
  const double e0 = rows.front().l2_sq;
  const double denom = e0 > 0.0 ? e0 : 1.0;
  const bool iso = record.config.viscosity_mode == ViscosityMode::Isotropic;

  std::vector<double> d(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    d[i] = 2.0 * (rows[i].grad_h_l2_sq + (iso ? rows[i].d3v_l2_sq : 0.0));

  // second differences of the dissipation series, for the a posteriori
  // trapezoid error (dt^2/12) int |f''|
  std::vector<double> f2(rows.size(), 0.0);
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
    const double dt = 0.5 * (rows[i + 1].t - rows[i - 1].t);
    f2[i] = std::abs(d[i + 1] - 2.0 * d[i] + d[i - 1]) / (dt * dt);
  }
  if (rows.size() >= 3) {
    f2.front() = f2[1];
    f2.back() = f2[rows.size() - 2];
  }

  double trap = 0.0;
  double bound = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) {
      const double dt = rows[i].t - rows[i - 1].t;
      trap += 0.5 * dt * (d[i] + d[i - 1]);
      bound += dt * dt * dt / 12.0 * std::max(f2[i - 1], f2[i]);
    }
    out.t.push_back(rows[i].t);
    out.residual_trapezoid.push_back(std::abs(rows[i].l2_sq + trap - e0) / denom);
    out.trapezoid_bound.push_back(bound / denom);
    out.residual_ledger.push_back(std::abs(rows[i].l2_sq + rows[i].diss_integral - e0) / denom);
  }
  return out;
}

std::vector<AprioriRow> apriori_monitor(const TrajectoryRecord& record) {
  const auto& rows = record.rows;
  std::vector<AprioriRow> out;
  if (rows.size() < 3) return out;
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
    const double dt = rows[i + 1].t - rows[i - 1].t;
    AprioriRow r;
    r.t = rows[i].t;
    r.ddt_grad_h_l2_sq = (rows[i + 1].grad_h_l2_sq - rows[i - 1].grad_h_l2_sq) / dt;
    r.laph_diss = rows[i].lap_h_l2_sq;
    r.rhs_gradh_besov_sq = rows[i].grad_h_b0half * rows[i].grad_h_b0half;
    r.rhs_d3_hpos_sq = rows[i].d3v_hpos_half_sq;
    r.gradh_l2_sq = rows[i].grad_h_l2_sq;

    r.ddt_d3_hneg_sq = (rows[i + 1].d3v_hneg_half_sq - rows[i - 1].d3v_hneg_half_sq) / dt;
    r.d3_hpos_sq = rows[i].d3v_hpos_half_sq;
    r.rhs_mixed_factor = std::sqrt(std::sqrt(rows[i].grad_h_v3_l2_sq)) *
                         std::sqrt(std::sqrt(rows[i].div_h_vh_l2_sq)) *
                         std::sqrt(rows[i].d3sq_l2_sq) * std::sqrt(rows[i].d3v_hneg_half_sq);
    r.d3_hneg_sq = rows[i].d3v_hneg_half_sq;

    r.ddt_hneg_s_sq = (rows[i + 1].hneg_s_sq - rows[i - 1].hneg_s_sq) / dt;
    r.gradh_hneg_s_sq = rows[i].grad_h_hneg_s_sq;
    r.rhs_besov_combo = (1.0 + rows[i].b0half * rows[i].b0half) * rows[i].grad_h_b0half *
                            rows[i].grad_h_b0half +
                        rows[i].d3v_hpos_half_sq;
    r.hneg_s_sq = rows[i].hneg_s_sq;
    out.push_back(r);
  }
  return out;
}

} // namespace anidecay
