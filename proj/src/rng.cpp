#include "ncpolydom/rng.hpp"

#include <cmath>

namespace ncpolydom {

double PortableRng::uniform() {
  // Top 53 bits give a dyadic rational in [0, 1).
  return static_cast<double>(bits() >> 11) * 0x1.0p-53;
}

double PortableRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t PortableRng::below(std::uint64_t n) { return n ? bits() % n : 0; }

double PortableRng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 6.283185307179586476925286766559 * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

}  // namespace ncpolydom
