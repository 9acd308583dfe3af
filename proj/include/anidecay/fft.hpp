#pragma once

#include "anidecay/field.hpp"
#include "anidecay/grid.hpp"
#include "anidecay/parallel.hpp"

#include <memory>

namespace anidecay {

/// Periodic 3D transforms between physical samples and Fourier coefficients.
///
/// Backed by FFTW line plans (one batched 1D plan per axis and direction,
/// FFTW_ESTIMATE so planning is deterministic). The cube is swept axis by
/// axis; the per-plane batches are independent, so they run under the
/// parallel kernel layer and give bit-identical results for any thread
/// count. Normalization follows grid.hpp: forward carries 1/(n_h^2 n_v).
class FourierTransform {
public:
  explicit FourierTransform(const Grid3& grid);
  ~FourierTransform();
  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;

  const Grid3& grid() const { return grid_; }

  /// Physical samples -> coefficients. Throws DimensionError on grid mismatch.
  SpectralScalarField forward(const RealField& samples) const;

  /// Coefficients -> physical samples. For Hermitian inputs the imaginary
  /// part is round-off; its max modulus is reported through *imag_defect.
  RealField inverse(const SpectralScalarField& f, double* imag_defect = nullptr) const;

  /// Unnormalized in-place complex transform; sign = -1 is the forward
  /// (e^{-ikx}) direction, +1 the backward. Used by diagnostics and tests.
  void raw_transform(std::vector<Complex>& data, int sign, Exec exec) const;
  void raw_transform(std::vector<Complex>& data, int sign) const {
    raw_transform(data, sign, par::default_exec());
  }

private:
  struct Plans;
  Grid3 grid_;
  std::unique_ptr<Plans> plans_;
};

/// Shared per-grid-shape transform cache (plans depend on n_h, n_v only).
const FourierTransform& fft_for(const Grid3& grid);

} // namespace anidecay
