#pragma once
// Execution backend for the hot kernels.  Every kernel computes independent
// slot values (one per work item) and then reduces them serially in slot
// order, so the serial and the OpenMP path produce bitwise-identical results;
// the serial path doubles as the reference implementation in tests.
// NCPOLYDOM_THREADS caps the thread count (1 forces serial work sharing).

#include <cstdlib>
#include <string>
#include <vector>

#ifdef NCPOLYDOM_HAVE_OPENMP
#include <omp.h>
#endif

namespace ncpolydom {

enum class Exec { serial, parallel };

inline int max_threads() {
  static int cached = [] {
    if (const char* env = std::getenv("NCPOLYDOM_THREADS")) {
      int v = std::atoi(env);
      if (v >= 1) return v;
    }
#ifdef NCPOLYDOM_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
  }();
  return cached;
}

inline Exec default_exec() { return max_threads() > 1 ? Exec::parallel : Exec::serial; }

// Runs f(i) for i in [0, n).  f must only write to its own slot.
template <class Fn>
void for_indexed(Exec mode, long n, Fn&& f) {
  if (mode == Exec::parallel && max_threads() > 1) {
#ifdef NCPOLYDOM_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (long i = 0; i < n; ++i) f(i);
    return;
#endif
  }
  for (long i = 0; i < n; ++i) f(i);
}

// Fills a slot vector with f(i) and returns it; reduction over the slots is
// the caller's (serial, fixed-order) job.
template <class T, class Fn>
std::vector<T> map_indexed(Exec mode, long n, Fn&& f) {
  std::vector<T> slots(static_cast<std::size_t>(n));
  for_indexed(mode, n, [&](long i) { slots[static_cast<std::size_t>(i)] = f(i); });
  return slots;
}

}  // namespace ncpolydom
