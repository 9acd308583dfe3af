#include "anidecay/parallel.hpp"

#include <omp.h>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

namespace anidecay::par {
namespace {
int g_threads = 1;
Exec g_exec = Exec::Serial;

// Field buffers are multi-MB and short-lived; keep glibc from returning them
// to the kernel on every free (mmap/munmap per field dominates otherwise).
struct MallocTuning {
  MallocTuning() {
#if defined(__GLIBC__)
    mallopt(M_MMAP_THRESHOLD, 256 * 1024 * 1024);
    mallopt(M_TRIM_THRESHOLD, 256 * 1024 * 1024);
#endif
    // Idle workers must sleep, not spin: the kernels interleave short
    // parallel regions with serial glue, and spinning threads starve it.
    setenv("OMP_WAIT_POLICY", "passive", 0);
  }
};
const MallocTuning g_malloc_tuning;
} // namespace

void set_threads(int n) {
  if (n < 1) n = 1;
  g_threads = n;
  omp_set_num_threads(n);
  g_exec = (n > 1) ? Exec::OpenMP : Exec::Serial;
}

int threads() { return g_threads; }

Exec default_exec() { return g_exec; }

void set_default_exec(Exec e) { g_exec = e; }

} // namespace anidecay::par
