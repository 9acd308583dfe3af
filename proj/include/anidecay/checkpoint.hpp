#pragma once

#include "anidecay/field.hpp"

#include <string>

namespace anidecay {

// Checkpoint binary layout (little-endian):
//   bytes 0..3   magic "ANSD"
//   u32          version (currently 1)
//   f64 x 5      n_h, n_h, n_v, l_h, l_v
//   f64          time
//   then v1, v2, v3 coefficient arrays, each grid.size() complex values
//   stored as (re, im) f64 pairs, m1 fastest-varying.

struct Checkpoint {
  SpectralVectorField v;
  double time = 0.0;
};

void write_checkpoint(const std::string& path, const SpectralVectorField& v, double time);
Checkpoint read_checkpoint(const std::string& path);

} // namespace anidecay
