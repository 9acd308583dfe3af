#pragma once

#include <cstdint>
#include <vector>

namespace anidecay {

/// Execution path for the data-parallel kernels. Every kernel has an OpenMP
/// implementation and a serial one with identical arithmetic; tests compare
/// the two bit-for-bit and the bench target compares their throughput.
enum class Exec { Serial, OpenMP };

namespace par {

/// Thread count used by Exec::OpenMP regions (clamped to >= 1).
void set_threads(int n);
int threads();

/// Currently selected default execution path (OpenMP once threads > 1).
Exec default_exec();
void set_default_exec(Exec e);

/// Parallel loop over [0, n). The body must be pure per index.
template <class F>
inline void for_range(Exec exec, std::int64_t n, F&& body) {
  if (exec == Exec::OpenMP) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) body(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) body(i);
  }
}

template <class F>
inline void for_range(std::int64_t n, F&& body) {
  for_range(default_exec(), n, std::forward<F>(body));
}

/// Deterministic reduction: one partial sum per slab, computed independently
/// (possibly in parallel), then combined in slab order. The result is
/// bit-identical for any thread count because each slab's arithmetic and the
/// final combination order are fixed.
template <class F>
inline double sum_slabs(Exec exec, std::int64_t nslabs, F&& slab_sum) {
  std::vector<double> partial(static_cast<std::size_t>(nslabs), 0.0);
  if (exec == Exec::OpenMP) {
#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < nslabs; ++s) partial[static_cast<std::size_t>(s)] = slab_sum(s);
  } else {
    for (std::int64_t s = 0; s < nslabs; ++s) partial[static_cast<std::size_t>(s)] = slab_sum(s);
  }
  double total = 0.0;
  for (std::int64_t s = 0; s < nslabs; ++s) total += partial[static_cast<std::size_t>(s)];
  return total;
}

template <class F>
inline double sum_slabs(std::int64_t nslabs, F&& slab_sum) {
  return sum_slabs(default_exec(), nslabs, std::forward<F>(slab_sum));
}

/// Deterministic max over slabs (max is order-independent in IEEE arithmetic).
template <class F>
inline double max_slabs(Exec exec, std::int64_t nslabs, F&& slab_max) {
  std::vector<double> partial(static_cast<std::size_t>(nslabs), 0.0);
  if (exec == Exec::OpenMP) {
#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < nslabs; ++s) partial[static_cast<std::size_t>(s)] = slab_max(s);
  } else {
    for (std::int64_t s = 0; s < nslabs; ++s) partial[static_cast<std::size_t>(s)] = slab_max(s);
  }
  double m = 0.0;
  for (std::int64_t s = 0; s < nslabs; ++s)
    if (partial[static_cast<std::size_t>(s)] > m) m = partial[static_cast<std::size_t>(s)];
  return m;
}

template <class F>
inline double max_slabs(std::int64_t nslabs, F&& slab_max) {
  return max_slabs(default_exec(), nslabs, std::forward<F>(slab_max));
}

} // namespace par
} // namespace anidecay
