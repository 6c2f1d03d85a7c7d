// Benchmark of the parallel kernels against the serial reference path.
// Each kernel runs in both modes on the same inputs; the table reports wall
// times, the speedup, and whether the two results are bitwise identical
// (they must be: parallel reductions fill per-term slots and reduce in a
// fixed order).

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "ncpolydom/berezin.hpp"
#include "ncpolydom/fock.hpp"
#include "ncpolydom/metric.hpp"
#include "ncpolydom/optuple.hpp"
#include "ncpolydom/parallel.hpp"
#include "ncpolydom/rng.hpp"
#include "ncpolydom/series.hpp"

namespace npd = ncpolydom;

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    double t0 = now_seconds();
    f();
    best = std::min(best, now_seconds() - t0);
  }
  return best;
}

bool bitwise_equal(const npd::Mat& a, const npd::Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return std::memcmp(a.data(), b.data(), sizeof(npd::cd) * a.size()) == 0;
}

bool bitwise_equal(const npd::RVec& a, const npd::RVec& b) {
  if (a.size() != b.size()) return false;
  return std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

void row(const char* name, double serial, double parallel, bool identical) {
  std::printf("%-28s %10.4f ms %10.4f ms %8.2fx   %s\n", name, serial * 1e3, parallel * 1e3,
              parallel > 0 ? serial / parallel : 0.0, identical ? "identical" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  int reps = 3;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--reps" && i + 1 < argc) reps = std::atoi(argv[++i]);

  std::printf("threads available: %d\n", npd::max_threads());
  std::printf("%-28s %13s %13s %9s   %s\n", "kernel", "serial", "parallel", "speedup", "check");

  // Diagonal defect pipeline on a large two-factor model.
  {
    npd::PolyTuple q = npd::PolyTuple::ball({2, 2});
    npd::TensorModel model(q, {8, 8});
    npd::RVec s, p;
    double ts = best_of(reps, [&] { s = model.defect_diag({1, 1}, npd::Exec::serial); });
    double tp = best_of(reps, [&] { p = model.defect_diag({1, 1}, npd::Exec::parallel); });
    row("defect_diag (dim 261121)", ts, tp, bitwise_equal(s, p));
  }

  // Completely positive map on dense matrices.
  {
    npd::PolyTuple q = npd::PolyTuple::ball({3, 2});
    npd::PortableRng rng(1);
    npd::OperatorTuple x = npd::random_tuple({3, 2}, {10, 12}, rng);
    npd::Mat y = npd::Mat::Identity(x.dim, x.dim);
    npd::Mat s, p;
    double ts = best_of(reps, [&] { s = npd::phi_apply(q.polys[0], x.blocks[0], y, npd::Exec::serial); });
    double tp = best_of(reps, [&] { p = npd::phi_apply(q.polys[0], x.blocks[0], y, npd::Exec::parallel); });
    row("phi_apply (dim 120)", ts, tp, bitwise_equal(s, p));
  }

  // Model-norm bracket of a dense-coefficient series (sparse assembly + norm).
  {
    npd::PolyTuple q = npd::PolyTuple::ball({2});
    npd::FormalSeries f = npd::FormalSeries::make({2}, 2);
    npd::PortableRng rng(2);
    for (const npd::Word& w : npd::enumerate_words_up_to(2, 6)) {
      npd::Mat a(2, 2);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) a(r, c) = npd::cd(rng.normal(), rng.normal()) / 40.0;
      f.set(npd::WordTuple({w}), a);
    }
    npd::NormBracket s, p;
    double ts = best_of(reps, [&] { s = npd::model_norm(f, q, {0.7}, {8}, npd::Exec::serial); });
    double tp = best_of(reps, [&] { p = npd::model_norm(f, q, {0.7}, {8}, npd::Exec::parallel); });
    bool same = std::memcmp(&s, &p, sizeof s) == 0;
    row("model_norm (127 terms)", ts, tp, same);
  }

  // Series evaluation on an operator tuple.
  {
    npd::PolyTuple q = npd::PolyTuple::ball({2, 1});
    npd::FormalSeries f = npd::FormalSeries::make({2, 1}, 1);
    npd::PortableRng rng(3);
    for (const npd::Word& w : npd::enumerate_words_up_to(2, 4))
      for (int m = 0; m <= 3; ++m)
        f.set_scalar(npd::WordTuple({w, npd::Word(std::vector<int>(m, 1))}),
                     npd::cd(rng.normal(), rng.normal()) / 60.0);
    npd::PortableRng rng2(4);
    npd::OperatorTuple x = npd::random_tuple({2, 1}, {6, 6}, rng2);
    x = npd::scaled(x, npd::cd(0.25 / std::max(1.0, npd::minkowski_functional(q, x)), 0.0));
    npd::EvalResult s, p;
    double ts = best_of(reps, [&] { s = npd::evaluate(f, q, x, 1e-6, npd::Exec::serial); });
    double tp = best_of(reps, [&] { p = npd::evaluate(f, q, x, 1e-6, npd::Exec::parallel); });
    row("evaluate (124 terms)", ts, tp, bitwise_equal(s.value, p.value));
  }

  // Kernel row assembly.
  {
    npd::PolyTuple q = npd::PolyTuple::ball({2, 2});
    npd::PortableRng rng(5);
    npd::OperatorTuple x = npd::random_nilpotent_tuple({2, 2}, {3, 3}, rng);
    x = npd::scaled(x, npd::cd(0.5 / std::max(1e-12, npd::minkowski_functional(q, x)), 0.0));
    std::vector<int> caps = {5, 5};
    npd::BerezinKernel s, p;
    double ts = best_of(reps, [&] { s = npd::build_kernel(q, x, caps, -1.0, npd::Exec::serial); });
    double tp = best_of(reps, [&] { p = npd::build_kernel(q, x, caps, -1.0, npd::Exec::parallel); });
    row("build_kernel (dim 63^2*9)", ts, tp, bitwise_equal(s.k, p.k));
  }

  return 0;
}
