#include "anidecay/fft.hpp"

#include "anidecay/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace anidecay {

// Two execution paths share the plan set:
//   * full complex-to-complex line sweeps (kept for diagnostics that need the
//     imaginary part of the inverse), and
//   * a half-spectrum real path (r2c along m1 plus c2c sweeps on the reduced
//     cube) used by forward()/inverse(), which exploits Hermitian symmetry of
//     real fields for roughly half the work.
// Every plan is FFTW_ESTIMATE (deterministic planning) and executed per
// plane/row through the parallel kernel layer, so results are bit-identical
// for any thread count.
struct FourierTransform::Plans {
  // [axis][direction]: direction 0 = FFTW_FORWARD, 1 = FFTW_BACKWARD
  fftw_plan p[3][2] = {};
  // half-cube passes: r2c/c2r along axis 0 and c2c along axes 1,2
  fftw_plan r2c = nullptr, c2r = nullptr;
  fftw_plan h[3][2] = {}; // [axis 1|2][direction], half-cube strides
  std::vector<Complex> scratch;
  std::vector<double> scratch_real;
};

namespace {
std::mutex g_planner_mutex; // FFTW planning is not thread-safe

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

bool same_shape(const Grid3& a, const Grid3& b) { return a.n_h == b.n_h && a.n_v == b.n_v; }
} // namespace

FourierTransform::FourierTransform(const Grid3& grid) : grid_(grid), plans_(new Plans) {
  const int nh = grid.n_h, nv = grid.n_v;
  const int nhp = nh / 2 + 1;
  plans_->scratch.assign(grid.size(), Complex(0.0, 0.0));
  plans_->scratch_real.assign(grid.size(), 0.0);
  fftw_complex* buf = as_fftw(plans_->scratch.data());
  double* rbuf = plans_->scratch_real.data();

  std::lock_guard<std::mutex> lock(g_planner_mutex);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  for (int dir = 0; dir < 2; ++dir) {
    const int sign = dir == 0 ? FFTW_FORWARD : FFTW_BACKWARD;
    int n = nh;
    // full cube: axis 0 (contiguous), axis 1 (stride nh), axis 2 (stride nh^2)
    plans_->p[0][dir] =
        fftw_plan_many_dft(1, &n, nh, buf, nullptr, 1, nh, buf, nullptr, 1, nh, sign, flags);
    plans_->p[1][dir] =
        fftw_plan_many_dft(1, &n, nh, buf, nullptr, nh, 1, buf, nullptr, nh, 1, sign, flags);
    int n2 = nv;
    plans_->p[2][dir] = fftw_plan_many_dft(1, &n2, nh, buf, nullptr, nh * nh, 1, buf, nullptr,
                                           nh * nh, 1, sign, flags);
    // half cube: axis 1 lines (length nh, stride nhp), axis 2 (stride nhp*nh)
    plans_->h[1][dir] =
        fftw_plan_many_dft(1, &n, nhp, buf, nullptr, nhp, 1, buf, nullptr, nhp, 1, sign, flags);
    plans_->h[2][dir] = fftw_plan_many_dft(1, &n2, nhp, buf, nullptr, nhp * nh, 1, buf, nullptr,
                                           nhp * nh, 1, sign, flags);
  }
  {
    int n = nh;
    plans_->r2c = fftw_plan_many_dft_r2c(1, &n, nh, rbuf, nullptr, 1, nh, buf, nullptr, 1, nhp,
                                         flags);
    plans_->c2r = fftw_plan_many_dft_c2r(1, &n, nh, buf, nullptr, 1, nhp, rbuf, nullptr, 1, nh,
                                         flags);
  }
  for (int a = 0; a < 3; ++a)
    for (int d = 0; d < 2; ++d)
      if (!plans_->p[a][d]) throw Error("FourierTransform: FFTW planning failed");
  if (!plans_->r2c || !plans_->c2r || !plans_->h[1][0] || !plans_->h[2][0] || !plans_->h[1][1] ||
      !plans_->h[2][1])
    throw Error("FourierTransform: FFTW half-spectrum planning failed");
}

FourierTransform::~FourierTransform() {
  std::lock_guard<std::mutex> lock(g_planner_mutex);
  for (auto& row : plans_->p)
    for (auto& p : row)
      if (p) fftw_destroy_plan(p);
  for (auto& row : plans_->h)
    for (auto& p : row)
      if (p) fftw_destroy_plan(p);
  if (plans_->r2c) fftw_destroy_plan(plans_->r2c);
  if (plans_->c2r) fftw_destroy_plan(plans_->c2r);
}

void FourierTransform::raw_transform(std::vector<Complex>& data, int sign, Exec exec) const {
  if (data.size() != grid_.size()) throw DimensionError("raw_transform: size mismatch");
  const int nh = grid_.n_h, nv = grid_.n_v;
  const int dir = sign < 0 ? 0 : 1;
  Complex* base = data.data();
  const std::size_t plane = std::size_t(nh) * nh;

  par::for_range(exec, nv, [&](std::int64_t i3) {
    fftw_complex* p = as_fftw(base + static_cast<std::size_t>(i3) * plane);
    fftw_execute_dft(plans_->p[0][dir], p, p);
  });
  par::for_range(exec, nv, [&](std::int64_t i3) {
    fftw_complex* p = as_fftw(base + static_cast<std::size_t>(i3) * plane);
    fftw_execute_dft(plans_->p[1][dir], p, p);
  });
  par::for_range(exec, nh, [&](std::int64_t i2) {
    fftw_complex* p = as_fftw(base + static_cast<std::size_t>(i2) * nh);
    fftw_execute_dft(plans_->p[2][dir], p, p);
  });
}

SpectralScalarField FourierTransform::forward(const RealField& samples) const {
  if (!same_shape(samples.grid, grid_)) throw DimensionError("forward_transform: grid mismatch");
  const int nh = grid_.n_h, nv = grid_.n_v;
  const int nhp = nh / 2 + 1;
  const std::size_t hplane = std::size_t(nhp) * nh;

  std::vector<Complex> half(hplane * nv);
  // axis 0: r2c per i3-plane
  par::for_range(nv, [&](std::int64_t i3) {
    double* in = const_cast<double*>(samples.v.data()) +
                 static_cast<std::size_t>(i3) * nh * nh;
    fftw_execute_dft_r2c(plans_->r2c, in,
                         as_fftw(half.data() + static_cast<std::size_t>(i3) * hplane));
  });
  // axes 1, 2: c2c forward on the half cube
  par::for_range(nv, [&](std::int64_t i3) {
    fftw_complex* p = as_fftw(half.data() + static_cast<std::size_t>(i3) * hplane);
    fftw_execute_dft(plans_->h[1][0], p, p);
  });
  par::for_range(nh, [&](std::int64_t i2) {
    fftw_complex* p = as_fftw(half.data() + static_cast<std::size_t>(i2) * nhp);
    fftw_execute_dft(plans_->h[2][0], p, p);
  });

  // scatter into the full cube with exact conjugate mirroring
  SpectralScalarField out(samples.grid);
  const double scale = 1.0 / static_cast<double>(grid_.size());
  const std::size_t plane = std::size_t(nh) * nh;
  par::for_range(nv, [&](std::int64_t i3) {
    const int j3 = (nv - static_cast<int>(i3)) % nv;
    for (int i2 = 0; i2 < nh; ++i2) {
      const int j2 = (nh - i2) % nh;
      const std::size_t row = static_cast<std::size_t>(i3) * plane + std::size_t(i2) * nh;
      const std::size_t hrow = static_cast<std::size_t>(i3) * hplane + std::size_t(i2) * nhp;
      const std::size_t mrow = std::size_t(j3) * hplane + std::size_t(j2) * nhp;
      for (int i1 = 0; i1 < nh; ++i1) {
        out.c[row + i1] = i1 < nhp ? scale * half[hrow + i1]
                                   : scale * std::conj(half[mrow + (nh - i1)]);
      }
    }
  });
  return out;
}

RealField FourierTransform::inverse(const SpectralScalarField& f, double* imag_defect) const {
  if (!same_shape(f.grid, grid_)) throw DimensionError("inverse_transform: grid mismatch");
  const int nh = grid_.n_h, nv = grid_.n_v;

  if (imag_defect) {
    // diagnostic path: full complex transform so the imaginary part is real
    std::vector<Complex> work = f.c;
    raw_transform(work, +1);
    RealField out(f.grid);
    par::for_range(static_cast<std::int64_t>(work.size()), [&](std::int64_t i) {
      out.v[static_cast<std::size_t>(i)] = work[static_cast<std::size_t>(i)].real();
    });
    const std::size_t plane = std::size_t(nh) * nh;
    *imag_defect = par::max_slabs(nv, [&](std::int64_t s) {
      double m = 0.0;
      const std::size_t base = static_cast<std::size_t>(s) * plane;
      for (std::size_t i = 0; i < plane; ++i)
        m = std::max(m, std::abs(work[base + i].imag()));
      return m;
    });
    return out;
  }

  // fast path: gather the m1 >= 0 half-spectrum, c2c backward on axes 2 and
  // 1, then c2r along axis 0 (input must be Hermitian; all producers of
  // spectral fields in this project preserve that symmetry)
  const int nhp = nh / 2 + 1;
  const std::size_t hplane = std::size_t(nhp) * nh;
  const std::size_t plane = std::size_t(nh) * nh;
  std::vector<Complex> half(hplane * nv);
  par::for_range(nv, [&](std::int64_t i3) {
    for (int i2 = 0; i2 < nh; ++i2) {
      const std::size_t row = static_cast<std::size_t>(i3) * plane + std::size_t(i2) * nh;
      const std::size_t hrow = static_cast<std::size_t>(i3) * hplane + std::size_t(i2) * nhp;
      for (int i1 = 0; i1 < nhp; ++i1) half[hrow + i1] = f.c[row + i1];
    }
  });
  par::for_range(nh, [&](std::int64_t i2) {
    fftw_complex* p = as_fftw(half.data() + static_cast<std::size_t>(i2) * nhp);
    fftw_execute_dft(plans_->h[2][1], p, p);
  });
  par::for_range(nv, [&](std::int64_t i3) {
    fftw_complex* p = as_fftw(half.data() + static_cast<std::size_t>(i3) * hplane);
    fftw_execute_dft(plans_->h[1][1], p, p);
  });
  RealField out(f.grid);
  par::for_range(nv, [&](std::int64_t i3) {
    fftw_execute_dft_c2r(plans_->c2r,
                         as_fftw(half.data() + static_cast<std::size_t>(i3) * hplane),
                         out.v.data() + static_cast<std::size_t>(i3) * plane);
  });
  return out;
}

const FourierTransform& fft_for(const Grid3& grid) {
  static std::mutex cache_mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<FourierTransform>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto key = std::make_pair(grid.n_h, grid.n_v);
  auto it = cache.find(key);
  if (it == cache.end()) {
    Grid3 shape(grid.n_h, grid.n_v, grid.l_h, grid.l_v);
    it = cache.emplace(key, std::make_unique<FourierTransform>(shape)).first;
  }
  return *it->second;
}

} // namespace anidecay
