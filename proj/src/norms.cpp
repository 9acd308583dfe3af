#include "anidecay/norms.hpp"

#include "anidecay/errors.hpp"
#include "anidecay/multipliers.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace anidecay {

namespace {

// sum over modes of w(m) |ahat|^2 and the excluded singular mass, both
// unweighted by volume (applied by callers).
struct WeightedSums {
  double sum = 0.0;
  double excluded = 0.0;
};

WeightedSums sobolev_sums(const SpectralScalarField& a, double s_h, double s_v) {
  const Grid3& g = a.grid;
  const int nh = g.n_h, nv = g.n_v;
  const std::size_t plane = std::size_t(nh) * nh;
  const bool exclude_kh0 = s_h < 0.0;
  const bool exclude_k30 = s_v < 0.0;

  std::vector<double> part_sum(static_cast<std::size_t>(nv), 0.0);
  std::vector<double> part_exc(static_cast<std::size_t>(nv), 0.0);
  par::for_range(nv, [&](std::int64_t sl) {
    const int i3 = static_cast<int>(sl);
    const double k3 = g.wavenumber(2, i3);
    const double wv = (s_v == 0.0) ? 1.0 : std::pow(k3 * k3, s_v);
    double acc = 0.0, exc = 0.0;
    for (int i2 = 0; i2 < nh; ++i2) {
      const double k2 = g.wavenumber(1, i2);
      const std::size_t row = static_cast<std::size_t>(sl) * plane + std::size_t(i2) * nh;
      for (int i1 = 0; i1 < nh; ++i1) {
        const double m2 = std::norm(a.c[row + i1]);
        if (m2 == 0.0) continue;
        const double k1 = g.wavenumber(0, i1);
        const double kh2 = k1 * k1 + k2 * k2;
        if ((exclude_kh0 && kh2 == 0.0) || (exclude_k30 && k3 == 0.0)) {
          exc += m2;
          continue;
        }
        // 0^0 = 1 so (0,0) reduces to plain L2; 0^positive = 0.
        const double wh = (s_h == 0.0) ? 1.0 : std::pow(kh2, s_h);
        acc += wh * wv * m2;
      }
    }
    part_sum[static_cast<std::size_t>(sl)] = acc;
    part_exc[static_cast<std::size_t>(sl)] = exc;
  });

  WeightedSums out;
  for (int i = 0; i < nv; ++i) {
    out.sum += part_sum[static_cast<std::size_t>(i)];
    out.excluded += part_exc[static_cast<std::size_t>(i)];
  }
  return out;
}

} // namespace

NormValue aniso_sobolev_norm(const SpectralScalarField& a, double s_h, double s_v) {
  if (!std::isfinite(s_h) || !std::isfinite(s_v))
    throw ParameterError("aniso_sobolev_norm: nonfinite exponent");
  const WeightedSums w = sobolev_sums(a, s_h, s_v);
  return {std::sqrt(a.grid.volume() * w.sum), a.grid.volume() * w.excluded};
}

NormValue aniso_sobolev_norm(const SpectralVectorField& v, double s_h, double s_v) {
  if (!std::isfinite(s_h) || !std::isfinite(s_v))
    throw ParameterError("aniso_sobolev_norm: nonfinite exponent");
  double sum = 0.0, exc = 0.0;
  for (int i = 0; i < 3; ++i) {
    const WeightedSums w = sobolev_sums(v[i], s_h, s_v);
    sum += w.sum;
    exc += w.excluded;
  }
  return {std::sqrt(v.grid.volume() * sum), v.grid.volume() * exc};
}

double l2_norm(const SpectralScalarField& a) { return aniso_sobolev_norm(a, 0.0, 0.0).value; }
double l2_norm(const SpectralVectorField& v) { return aniso_sobolev_norm(v, 0.0, 0.0).value; }

double khzero_plane_energy(const SpectralVectorField& v) {
  const Grid3& g = v.grid;
  double sum = 0.0;
  for (int c = 0; c < 3; ++c)
    for (int i3 = 0; i3 < g.n_v; ++i3) sum += std::norm(v[c].at(0, 0, i3));
  return g.volume() * sum;
}

namespace {

// ||Delta_l a||_{L2}^2 from per-slot plane masses: the vertical weight is
// constant on each i3 plane.
double block_norm_from_planes(const std::vector<double>& plane_mass,
                              const std::vector<double>& weights) {
  double s = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i)
    s += weights[i] * weights[i] * plane_mass[i];
  return std::sqrt(s);
}

std::vector<double> vertical_plane_masses(const SpectralScalarField& a) {
  const Grid3& g = a.grid;
  const std::size_t plane = std::size_t(g.n_h) * g.n_h;
  std::vector<double> mass(static_cast<std::size_t>(g.n_v), 0.0);
  par::for_range(g.n_v, [&](std::int64_t s) {
    double acc = 0.0;
    const std::size_t base = static_cast<std::size_t>(s) * plane;
    for (std::size_t i = 0; i < plane; ++i) acc += std::norm(a.c[base + i]);
    mass[static_cast<std::size_t>(s)] = g.volume() * acc;
  });
  return mass;
}

double b0half_from_planes(const std::vector<double>& mass, const DyadicFilterBank& bank) {
  double total = std::exp2(0.5 * bank.j_min()) *
                 block_norm_from_planes(mass, bank.vertical_weights(BlockKind::SLow, bank.j_min()));
  for (int j = bank.j_min(); j <= bank.j_max(); ++j)
    total += std::exp2(0.5 * j) *
             block_norm_from_planes(mass, bank.vertical_weights(BlockKind::Delta, j));
  return total;
}

} // namespace

double b0half_norm(const SpectralScalarField& a, const DyadicFilterBank& vbank) {
  if (vbank.direction() != Direction::Vertical)
    throw ParameterError("b0half_norm: requires a vertical filter bank");
  if (!(a.grid == vbank.grid())) throw DimensionError("b0half_norm: grid mismatch");
  return b0half_from_planes(vertical_plane_masses(a), vbank);
}

double b0half_norm(const SpectralVectorField& v, const DyadicFilterBank& vbank) {
  if (vbank.direction() != Direction::Vertical)
    throw ParameterError("b0half_norm: requires a vertical filter bank");
  if (!(v.grid == vbank.grid())) throw DimensionError("b0half_norm: grid mismatch");
  std::vector<double> mass = vertical_plane_masses(v[0]);
  for (int c = 1; c < 3; ++c) {
    std::vector<double> m = vertical_plane_masses(v[c]);
    for (std::size_t i = 0; i < mass.size(); ++i) mass[i] += m[i];
  }
  return b0half_from_planes(mass, vbank);
}

double mixed_lebesgue_norm(const RealField& a, double p_h, double q_v) {
  const bool p_ok = p_h == 2.0 || p_h == 4.0 || std::isinf(p_h);
  const bool q_ok = q_v == 2.0 || q_v == 4.0 || std::isinf(q_v);
  if (!p_ok || !q_ok)
    throw ParameterError("mixed_lebesgue_norm: exponents restricted to {2, 4, inf}");

  const Grid3& g = a.grid;
  const int nh = g.n_h, nv = g.n_v;
  const double dz = g.l_v / nv;
  const double dA = (g.l_h / nh) * (g.l_h / nh);
  const std::size_t plane = std::size_t(nh) * nh;

  // inner q-norm along x3 per horizontal point
  std::vector<double> inner(plane, 0.0);
  par::for_range(static_cast<std::int64_t>(plane), [&](std::int64_t hp) {
    const auto h = static_cast<std::size_t>(hp);
    if (std::isinf(q_v)) {
      double m = 0.0;
      for (int i3 = 0; i3 < nv; ++i3)
        m = std::max(m, std::abs(a.v[h + static_cast<std::size_t>(i3) * plane]));
      inner[h] = m;
    } else {
      double s = 0.0;
      for (int i3 = 0; i3 < nv; ++i3) {
        const double x = std::abs(a.v[h + static_cast<std::size_t>(i3) * plane]);
        s += (q_v == 2.0 ? x * x : x * x * x * x);
      }
      inner[h] = std::pow(dz * s, 1.0 / q_v);
    }
  });

  if (std::isinf(p_h)) {
    double m = 0.0;
    for (std::size_t h = 0; h < plane; ++h) m = std::max(m, inner[h]);
    return m;
  }
  double s = 0.0;
  for (std::size_t h = 0; h < plane; ++h)
    s += (p_h == 2.0 ? inner[h] * inner[h]
                     : inner[h] * inner[h] * inner[h] * inner[h]);
  return std::pow(dA * s, 1.0 / p_h);
}

double s_gate_lower(double s1) { return (1.0 + 3.0 * s1) / (10.0 * (s1 - 1.0)); }

void check_parameter_gate(double s, double s1) {
  if (!(s1 > 2.0))
    throw ParameterError("parameter gate: s1 must satisfy s1 > 2, got s1 = " + std::to_string(s1));
  const double lo = s_gate_lower(s1);
  if (!(s > lo && s < 1.0))
    throw ParameterError("parameter gate: s must lie in (" + std::to_string(lo) +
                         ", 1) for s1 = " + std::to_string(s1) + ", got s = " + std::to_string(s));
}

InitialDataReport data_functionals(const SpectralVectorField& v0, double s, double s1) {
  check_parameter_gate(s, s1);

  InitialDataReport r;
  r.s = s;
  r.s1 = s1;

  const double l2 = l2_norm(v0);
  r.l2_sq = l2 * l2;
  const double v3 = l2_norm(v0[2]);
  r.v3_l2_sq = v3 * v3;

  NormValue hneg = aniso_sobolev_norm(v0, -s, 0.0);
  r.hneg_s_sq = hneg.value * hneg.value;
  r.excluded_mass += hneg.excluded_mass;

  NormValue hmix = aniso_sobolev_norm(v0, -s, -0.5 * s - 0.25);
  r.hneg_mixed_sq = hmix.value * hmix.value;
  r.excluded_mass += hmix.excluded_mass;

  SpectralVectorField d3(v0.grid);
  for (int c = 0; c < 3; ++c) d3[c] = derivative(v0[c], 2);
  NormValue d3n = aniso_sobolev_norm(d3, -0.5, 0.0);
  r.d3_hneg_half_sq = d3n.value * d3n.value;
  r.excluded_mass += d3n.excluded_mass;

  NormValue h0s1 = aniso_sobolev_norm(v0, 0.0, s1);
  r.h0s1_sq = h0s1.value * h0s1.value;

  DyadicFilterBank vbank = DyadicFilterBank::covering(v0.grid, Direction::Vertical);
  r.c0_norm = b0half_norm(v0, vbank);

  r.a_s = r.l2_sq + r.hneg_s_sq;
  r.b_s = r.v3_l2_sq + r.hneg_mixed_sq + std::pow(r.a_s, 1.5);
  r.e0 = r.d3_hneg_half_sq + r.h0s1_sq * std::pow(r.a_s * r.b_s, (s1 - 1.0) / (3.0 * s1 - 2.0));
  return r;
}

} // namespace anidecay
