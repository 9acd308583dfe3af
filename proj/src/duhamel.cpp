#include "anidecay/duhamel.hpp"

#include "anidecay/errors.hpp"
#include "anidecay/norms.hpp"

#include <cmath>
#include <string>

namespace anidecay {

SpectralScalarField pressure_from_products(const Grid3& g,
                                           const std::array<SpectralScalarField, 6>& w) {
  SpectralScalarField p(g);
  const int nh = g.n_h, nv = g.n_v;
  const std::size_t plane = std::size_t(nh) * nh;
  par::for_range(nv, [&](std::int64_t s) {
    const int i3 = static_cast<int>(s);
    const double k3 = g.wavenumber_deriv(2, i3);
    for (int i2 = 0; i2 < nh; ++i2) {
      const double k2 = g.wavenumber_deriv(1, i2);
      const std::size_t row = static_cast<std::size_t>(s) * plane + std::size_t(i2) * nh;
      for (int i1 = 0; i1 < nh; ++i1) {
        const double k1 = g.wavenumber_deriv(0, i1);
        const double kk = k1 * k1 + k2 * k2 + k3 * k3;
        const std::size_t idx = row + i1;
        if (kk == 0.0) {
          p.c[idx] = Complex(0.0, 0.0);
          continue;
        }
        const double kv[3] = {k1, k2, k3};
        Complex acc(0.0, 0.0);
        for (int j = 0; j < 3; ++j)
          for (int m = 0; m < 3; ++m)
            acc += kv[j] * kv[m] * w[static_cast<std::size_t>(product_index(j, m))].c[idx];
        p.c[idx] = -acc / kk;
      }
    }
  });
  return p;
}

SpectralScalarField pressure_field(const SpectralVectorField& v) {
  return pressure_from_products(v.grid, velocity_products(v));
}

void duhamel_kernels_from_products(const Grid3& g, const std::array<SpectralScalarField, 6>& w,
                                   SpectralScalarField& f1, SpectralScalarField& f2) {
  if (!(f1.grid == g)) f1 = SpectralScalarField(g);
  if (!(f2.grid == g)) f2 = SpectralScalarField(g);
  const int nh = g.n_h, nv = g.n_v;
  const std::size_t plane = std::size_t(nh) * nh;
  par::for_range(nv, [&](std::int64_t s) {
    const int i3 = static_cast<int>(s);
    const double k3 = g.wavenumber_deriv(2, i3);
    for (int i2 = 0; i2 < nh; ++i2) {
      const double k2 = g.wavenumber_deriv(1, i2);
      const std::size_t row = static_cast<std::size_t>(s) * plane + std::size_t(i2) * nh;
      for (int i1 = 0; i1 < nh; ++i1) {
        const double k1 = g.wavenumber_deriv(0, i1);
        const std::size_t idx = row + i1;
        const double kh2 = k1 * k1 + k2 * k2;
        const double kk = kh2 + k3 * k3;
        if (kk == 0.0) {
          f1.c[idx] = f2.c[idx] = Complex(0.0, 0.0);
          continue;
        }
        const double kv[3] = {k1, k2, k3};
        Complex s1(0.0, 0.0); // sum_j k_j (v^j v^3)^
        for (int j = 0; j < 3; ++j)
          s1 += kv[j] * w[static_cast<std::size_t>(product_index(j, 2))].c[idx];
        Complex s2(0.0, 0.0); // sum_j sum_{l<=2} k_j k_l (v^j v^l)^
        for (int j = 0; j < 3; ++j)
          for (int l = 0; l < 2; ++l)
            s2 += kv[j] * kv[l] * w[static_cast<std::size_t>(product_index(j, l))].c[idx];
        f1.c[idx] = Complex(0.0, -kh2 / kk) * s1;
        f2.c[idx] = Complex(0.0, k3 / kk) * s2;
      }
    }
  });
}

std::pair<SpectralScalarField, SpectralScalarField> duhamel_kernels(const SpectralVectorField& v) {
  const auto w = velocity_products(v);
  SpectralScalarField f1(v.grid), f2(v.grid);
  duhamel_kernels_from_products(v.grid, w, f1, f2);
  return {std::move(f1), std::move(f2)};
}

DuhamelSplit reconstruct_v3(const TrajectoryRecord& record, double t) {
  const auto& snaps = record.snapshots;
  if (snaps.empty())
    throw ParameterError("reconstruct_v3: the trajectory carries no snapshots "
                         "(set snapshot_cadence > 0)");
  // locate the query node
  std::size_t it = snaps.size();
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    if (std::abs(snaps[i].t - t) <= 1e-9 * std::max(1.0, std::abs(t))) {
      it = i;
      break;
    }
  }
  if (it == snaps.size())
    throw ParameterError("reconstruct_v3: t = " + std::to_string(t) +
                         " is not a snapshot time");
  if (it < 2)
    throw ParameterError("reconstruct_v3: insufficient snapshot density before t = " +
                         std::to_string(t) + "; need snapshot cadence <= " +
                         std::to_string(t / 2.0));

  const Grid3& g = record.config.grid;
  const bool linear_only = record.config.viscosity_mode == ViscosityMode::LinearOnly;
  const bool iso = record.config.viscosity_mode == ViscosityMode::Isotropic;

  // per-mode dissipation symbol of the run
  const auto symbol = [&](int i1, int i2, int i3) {
    const double k1 = g.wavenumber(0, i1);
    const double k2 = g.wavenumber(1, i2);
    double a = k1 * k1 + k2 * k2;
    if (iso) {
      const double k3 = g.wavenumber(2, i3);
      a += k3 * k3;
    }
    return a;
  };

  DuhamelSplit out;
  out.v3_n1 = SpectralScalarField(g);
  out.v3_n2 = SpectralScalarField(g);

  // linear part: exact semigroup from the t = 0 snapshot
  out.v3_l = SpectralScalarField(g);
  {
    const SpectralScalarField& v30 = snaps.front().v[2];
    const int nh = g.n_h, nv = g.n_v;
    const std::size_t plane = std::size_t(nh) * nh;
    par::for_range(nv, [&](std::int64_t s) {
      const int i3 = static_cast<int>(s);
      for (int i2 = 0; i2 < nh; ++i2) {
        const std::size_t row = static_cast<std::size_t>(s) * plane + std::size_t(i2) * nh;
        for (int i1 = 0; i1 < nh; ++i1)
          out.v3_l.c[row + i1] = std::exp(-t * symbol(i1, i2, i3)) * v30.c[row + i1];
      }
    });
  }

  if (!linear_only) {
    // trapezoid over nodes with exact semigroup factors between nodes:
    // I_{n+1} = E_gap I_n + gap/2 (E_gap F_n + F_{n+1})
    SpectralScalarField f1_prev(g), f2_prev(g);
    {
      const auto w = velocity_products(snaps.front().v);
      duhamel_kernels_from_products(g, w, f1_prev, f2_prev);
    }
    for (std::size_t n = 1; n <= it; ++n) {
      const double gap = snaps[n].t - snaps[n - 1].t;
      SpectralScalarField f1(g), f2(g);
      const auto w = velocity_products(snaps[n].v);
      duhamel_kernels_from_products(g, w, f1, f2);
      const int nh = g.n_h, nv = g.n_v;
      const std::size_t plane = std::size_t(nh) * nh;
      par::for_range(nv, [&](std::int64_t s) {
        const int i3 = static_cast<int>(s);
        for (int i2 = 0; i2 < nh; ++i2) {
          const std::size_t row = static_cast<std::size_t>(s) * plane + std::size_t(i2) * nh;
          for (int i1 = 0; i1 < nh; ++i1) {
            const std::size_t idx = row + i1;
            const double e = std::exp(-gap * symbol(i1, i2, i3));
            out.v3_n1.c[idx] = e * out.v3_n1.c[idx] + 0.5 * gap * (e * f1_prev.c[idx] + f1.c[idx]);
            out.v3_n2.c[idx] = e * out.v3_n2.c[idx] + 0.5 * gap * (e * f2_prev.c[idx] + f2.c[idx]);
          }
        }
      });
      f1_prev = std::move(f1);
      f2_prev = std::move(f2);
    }
  }

  SpectralScalarField recon = out.v3_l;
  recon += out.v3_n1;
  recon += out.v3_n2;
  recon -= snaps[it].v[2];
  const double denom = l2_norm(snaps[it].v[2]);
  out.residual = denom > 0.0 ? l2_norm(recon) / denom : l2_norm(recon);
  return out;
}

} // namespace anidecay
