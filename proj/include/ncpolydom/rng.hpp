#pragma once
// Portable deterministic random numbers.  The standard distributions are
// implementation-defined, so uniforms and normals are derived here directly
// from splitmix64 bits; the same seed yields the same stream on every
// platform and thread count.

#include <cstdint>

namespace ncpolydom {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t bits() { return splitmix64(state_); }

  // Uniform in [0, 1).
  double uniform();
  // Uniform in [lo, hi).
  double uniform(double lo, double hi);
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  // Standard normal via Box-Muller (caches the spare value).
  double normal();

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ncpolydom
