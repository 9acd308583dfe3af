// Throughput comparison of the data-parallel kernels: serial path vs the
// OpenMP path, on the desk-scale grid. Not part of ctest; build and run
// manually (see README).

#include "anidecay/fft.hpp"
#include "anidecay/initial_data.hpp"
#include "anidecay/norms.hpp"
#include "anidecay/parallel.hpp"
#include "anidecay/solver.hpp"
#include "anidecay/spectral_ops.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <numbers>

using namespace anidecay;

namespace {

template <class F>
double time_ms(int reps, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) body();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

} // namespace

int main(int argc, char** argv) {
  const int threads = argc > 1 ? std::atoi(argv[1]) : 2;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 10;

  const Grid3 g(64, 32, 64.0 * std::numbers::pi, 2.0 * std::numbers::pi);
  SpectralEnvelope env{-0.25, 1.5, 1.5, 1.0, 42};
  par::set_threads(1);
  GeneratedData data = generate(env, g, 0.5, 4.0);
  SpectralVectorField v = rescale_to_smallness(data.field, 0.05);
  const FourierTransform& fft = fft_for(g);
  const DyadicFilterBank vbank = DyadicFilterBank::covering(g, Direction::Vertical);
  RealField r = fft.inverse(v[0]);

  struct Entry {
    const char* name;
    double ms[2] = {0.0, 0.0};
  };
  Entry entries[] = {
      {"inverse_transform"}, {"forward_transform"}, {"velocity_products"}, {"nonlinear_term"},
      {"leray_project"},     {"norm_battery"},      {"ifrk4_step"},
  };

  for (int pass = 0; pass < 2; ++pass) {
    par::set_threads(pass == 1 ? threads : 1);
    Stepper stepper(g, ViscosityMode::Anisotropic, 1e-2);
    entries[0].ms[pass] = time_ms(reps, [&] { (void)fft.inverse(v[0]); });
    entries[1].ms[pass] = time_ms(reps, [&] { (void)fft.forward(r); });
    entries[2].ms[pass] = time_ms(reps, [&] { (void)velocity_products(v); });
    entries[3].ms[pass] = time_ms(reps, [&] { (void)nonlinear_term(v); });
    entries[4].ms[pass] = time_ms(reps, [&] { (void)leray_project(v); });
    entries[5].ms[pass] = time_ms(reps, [&] { (void)compute_norm_row(v, 0.0, 0.5, 4.0, vbank); });
    entries[6].ms[pass] = time_ms(3, [&] {
      SpectralVectorField w = stepper.step(v, 0.0);
      (void)w;
    });
  }

  std::printf("%-28s %12s %12s %8s\n", "kernel (64x64x32)", "serial ms", "omp ms", "speedup");
  for (const auto& e : entries)
    std::printf("%-28s %12.3f %12.3f %8.2fx\n", e.name, e.ms[0], e.ms[1],
                e.ms[0] / (e.ms[1] > 0 ? e.ms[1] : 1));
  return 0;
}
