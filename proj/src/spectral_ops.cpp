#include "anidecay/spectral_ops.hpp"

#include "anidecay/errors.hpp"
#include "anidecay/fft.hpp"
#include "anidecay/multipliers.hpp"

#include <cmath>

namespace anidecay {

SpectralVectorField leray_project(const SpectralVectorField& v) {
  const Grid3& g = v.grid;
  SpectralVectorField out(g);
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
          out.comp[0].c[idx] = out.comp[1].c[idx] = out.comp[2].c[idx] = Complex(0.0, 0.0);
          continue;
        }
        const Complex dot =
            (k1 * v.comp[0].c[idx] + k2 * v.comp[1].c[idx] + k3 * v.comp[2].c[idx]) / kk;
        out.comp[0].c[idx] = v.comp[0].c[idx] - k1 * dot;
        out.comp[1].c[idx] = v.comp[1].c[idx] - k2 * dot;
        out.comp[2].c[idx] = v.comp[2].c[idx] - k3 * dot;
      }
    }
  });
  out.div_free = true;
  return out;
}

bool inside_dealias_band(const Grid3& g, int i1, int i2, int i3) {
  return std::abs(g.mode(0, i1)) <= g.dealias_limit(0) &&
         std::abs(g.mode(1, i2)) <= g.dealias_limit(1) &&
         std::abs(g.mode(2, i3)) <= g.dealias_limit(2);
}

void dealias_inplace(SpectralScalarField& a) {
  const Grid3& g = a.grid;
  const int nh = g.n_h, nv = g.n_v;
  const int lim_h = g.dealias_limit(0), lim_v = g.dealias_limit(2);
  const std::size_t plane = std::size_t(nh) * nh;
  par::for_range(nv, [&](std::int64_t s) {
    const int i3 = static_cast<int>(s);
    const bool kill3 = std::abs(g.mode(2, i3)) > lim_v;
    for (int i2 = 0; i2 < nh; ++i2) {
      const bool kill2 = kill3 || std::abs(g.mode(1, i2)) > lim_h;
      const std::size_t row = static_cast<std::size_t>(s) * plane + std::size_t(i2) * nh;
      for (int i1 = 0; i1 < nh; ++i1) {
        if (kill2 || std::abs(g.mode(0, i1)) > lim_h) a.c[row + i1] = Complex(0.0, 0.0);
      }
    }
  });
}

void dealias_inplace(SpectralVectorField& v) {
  for (auto& f : v.comp) dealias_inplace(f);
}

SpectralScalarField spectral_product(const SpectralScalarField& a, const SpectralScalarField& b) {
  if (!(a.grid == b.grid)) throw DimensionError("spectral_product: grids differ");
  const FourierTransform& fft = fft_for(a.grid);
  RealField ra = fft.inverse(a);
  RealField rb = fft.inverse(b);
  RealField prod(a.grid);
  par::for_range(static_cast<std::int64_t>(prod.v.size()), [&](std::int64_t i) {
    prod.v[static_cast<std::size_t>(i)] =
        ra.v[static_cast<std::size_t>(i)] * rb.v[static_cast<std::size_t>(i)];
  });
  SpectralScalarField out = fft.forward(prod);
  dealias_inplace(out);
  return out;
}

int product_index(int j, int k) {
  if (j > k) std::swap(j, k);
  if (j == k) return j;              // 11,22,33 -> 0,1,2
  if (j == 0) return k == 1 ? 3 : 4; // 12,13
  return 5;                          // 23
}

std::array<SpectralScalarField, 6> velocity_products(const SpectralVectorField& v) {
  const FourierTransform& fft = fft_for(v.grid);
  std::array<RealField, 3> r;
  for (int j = 0; j < 3; ++j) r[static_cast<std::size_t>(j)] = fft.inverse(v[j]);

  std::array<SpectralScalarField, 6> w;
  const int pairs[6][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}};
  RealField prod(v.grid);
  for (int p = 0; p < 6; ++p) {
    const auto a = static_cast<std::size_t>(pairs[p][0]);
    const auto b = static_cast<std::size_t>(pairs[p][1]);
    par::for_range(static_cast<std::int64_t>(prod.v.size()), [&](std::int64_t i) {
      prod.v[static_cast<std::size_t>(i)] =
          r[a].v[static_cast<std::size_t>(i)] * r[b].v[static_cast<std::size_t>(i)];
    });
    w[static_cast<std::size_t>(p)] = fft.forward(prod);
    dealias_inplace(w[static_cast<std::size_t>(p)]);
  }
  return w;
}

SpectralVectorField nonlinear_term_from_products(const Grid3& g,
                                                 const std::array<SpectralScalarField, 6>& w) {
  SpectralVectorField adv(g);
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
        const double kv[3] = {k1, k2, k3};
        for (int comp = 0; comp < 3; ++comp) {
          Complex div(0.0, 0.0);
          for (int j = 0; j < 3; ++j)
            div += kv[j] * w[static_cast<std::size_t>(product_index(j, comp))].c[idx];
          // -(d_j (v^j v^comp))^ = -i k_j w_{j,comp}
          adv.comp[static_cast<std::size_t>(comp)].c[idx] = Complex(div.imag(), -div.real());
        }
      }
    }
  });
  SpectralVectorField out = leray_project(adv);
  for (auto& f : out.comp) f.c[0] = Complex(0.0, 0.0);
  return out;
}

SpectralVectorField nonlinear_term(const SpectralVectorField& v) {
  return nonlinear_term_from_products(v.grid, velocity_products(v));
}

double inner_product_real(const SpectralScalarField& a, const SpectralScalarField& b) {
  if (!(a.grid == b.grid)) throw DimensionError("inner_product: grids differ");
  const std::size_t plane = std::size_t(a.grid.n_h) * a.grid.n_h;
  const double sum = par::sum_slabs(a.grid.n_v, [&](std::int64_t s) {
    const std::size_t base = static_cast<std::size_t>(s) * plane;
    double acc = 0.0;
    for (std::size_t i = 0; i < plane; ++i) {
      const Complex& x = a.c[base + i];
      const Complex& y = b.c[base + i];
      acc += x.real() * y.real() + x.imag() * y.imag();
    }
    return acc;
  });
  return a.grid.volume() * sum;
}

double inner_product_real(const SpectralVectorField& a, const SpectralVectorField& b) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += inner_product_real(a[i], b[i]);
  return s;
}

} // namespace anidecay
