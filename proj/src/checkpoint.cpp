#include "anidecay/checkpoint.hpp"

#include "anidecay/errors.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace anidecay {

namespace {
constexpr char kMagic[4] = {'A', 'N', 'S', 'D'};
constexpr std::uint32_t kVersion = 1;

void put_f64(std::ostream& os, double x) { os.write(reinterpret_cast<const char*>(&x), 8); }
double get_f64(std::istream& is) {
  double x = 0.0;
  is.read(reinterpret_cast<char*>(&x), 8);
  return x;
}
} // namespace

void write_checkpoint(const std::string& path, const SpectralVectorField& v, double time) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("checkpoint: cannot open for writing: " + path);
  os.write(kMagic, 4);
  const std::uint32_t ver = kVersion;
  os.write(reinterpret_cast<const char*>(&ver), 4);
  put_f64(os, static_cast<double>(v.grid.n_h));
  put_f64(os, static_cast<double>(v.grid.n_h));
  put_f64(os, static_cast<double>(v.grid.n_v));
  put_f64(os, v.grid.l_h);
  put_f64(os, v.grid.l_v);
  put_f64(os, time);
  for (int c = 0; c < 3; ++c) {
    const auto& arr = v[c].c;
    os.write(reinterpret_cast<const char*>(arr.data()),
             static_cast<std::streamsize>(arr.size() * sizeof(Complex)));
  }
  if (!os) throw IoError("checkpoint: write failed: " + path);
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("checkpoint: cannot open for reading: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw IoError("checkpoint: bad magic in " + path);
  std::uint32_t ver = 0;
  is.read(reinterpret_cast<char*>(&ver), 4);
  if (ver != kVersion)
    throw IoError("checkpoint: unsupported version " + std::to_string(ver) + " in " + path);
  const double n1 = get_f64(is);
  const double n2 = get_f64(is);
  const double n3 = get_f64(is);
  const double lh = get_f64(is);
  const double lv = get_f64(is);
  const double time = get_f64(is);
  if (!is || n1 != n2 || n1 != std::floor(n1) || n3 != std::floor(n3))
    throw IoError("checkpoint: corrupt grid header in " + path);

  Checkpoint cp;
  cp.time = time;
  cp.v = SpectralVectorField(Grid3(static_cast<int>(n1), static_cast<int>(n3), lh, lv));
  for (int c = 0; c < 3; ++c) {
    auto& arr = cp.v[c].c;
    is.read(reinterpret_cast<char*>(arr.data()),
            static_cast<std::streamsize>(arr.size() * sizeof(Complex)));
  }
  if (!is) throw IoError("checkpoint: truncated file " + path);
  return cp;
}

} // namespace anidecay
