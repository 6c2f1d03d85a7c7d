#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ncpolydom/berezin.hpp"
#include "ncpolydom/rng.hpp"

using namespace ncpolydom;

namespace {

OperatorTuple scalar_tuple(double v) {
  OperatorTuple x;
  x.dim = 1;
  x.blocks = {{Mat::Constant(1, 1, cd(v, 0.0))}};
  return x;
}

OperatorTuple rescale_inside(const PolyTuple& q, OperatorTuple x, double target) {
  double gauge = minkowski_functional(q, x);
  if (gauge > 0) x = scaled(x, cd(target / gauge, 0.0));
  return x;
}

}  // namespace

TEST_CASE("scalar geometric point: closed-form kernel, tail, and isometry") {
  PolyTuple q = PolyTuple::ball({1});
  int cap = 20;
  BerezinKernel kern = build_kernel(q, scalar_tuple(0.5), {cap});

  // Row t of the kernel is sqrt(1 - 0.25) * 0.5^t.
  double defect = 1.0 - 0.25;
  for (int t = 0; t <= cap; ++t)
    CHECK(kern.k(t, 0).real() == doctest::Approx(std::sqrt(defect) * std::pow(0.5, t)).epsilon(1e-13));

  // Dropped-row bound: sqrt(defect * sum_{l > cap} 0.25^l) = 0.5^(cap + 1),
  // up to the bound's own relative slack.
  CHECK(kern.tail_bound == doctest::Approx(std::pow(0.5, cap + 1)).epsilon(1e-6));
  CHECK_FALSE(kern.tail_exact_zero);

  // K*K = 1 - 0.25^(cap+1): the isometry defect is exactly the dropped mass.
  CHECK(isometry_residual(kern) == doctest::Approx(std::pow(0.25, cap + 1)).epsilon(1e-6));
  // The intertwining identity is exact on every row except the top one, where
  // truncation leaks exactly sqrt(defect) * 0.5^(cap+1).
  CHECK(intertwining_residual(kern) ==
        doctest::Approx(std::sqrt(defect) * std::pow(0.5, cap + 1)).epsilon(1e-9));
}

TEST_CASE("kernel construction rejects points outside the closed domain") {
  PolyTuple q = PolyTuple::ball({1});
  CHECK_THROWS_WITH_AS(build_kernel(q, scalar_tuple(1.2), {10}),
                       doctest::Contains("outside the closed domain"), std::invalid_argument);
  // The boundary point itself is admissible.
  CHECK_NOTHROW(build_kernel(q, scalar_tuple(1.0), {10}));
}

TEST_CASE("strictly nilpotent tuples: exact zero tail, exact isometry, intertwining") {
  PortableRng rng(21);
  PolyTuple q = PolyTuple::ball({2, 2});
  OperatorTuple x = rescale_inside(q, random_nilpotent_tuple({2, 2}, {3, 3}, rng), 0.8);
  REQUIRE(strictly_upper_triangular(x));

  // caps >= d - 1 kill every word product beyond the nilpotency degree.
  std::vector<int> caps{x.dim - 1, x.dim - 1};
  BerezinKernel kern = build_kernel(q, x, caps);
  CHECK(kern.tail_exact_zero);
  CHECK(kern.tail_bound == 0.0);
  CHECK(isometry_residual(kern) <= 1e-10);
  CHECK(intertwining_residual(kern) <= 1e-10);
}

TEST_CASE("transform through the kernel equals the direct word products") {
  PortableRng rng(22);
  PolyTuple q = PolyTuple::ball({2, 1});
  OperatorTuple x = rescale_inside(q, random_nilpotent_tuple({2, 1}, {3, 2}, rng), 0.7);
  std::vector<int> caps{x.dim - 1, x.dim - 1};
  BerezinKernel kern = build_kernel(q, x, caps);

  // Every word pair with total length <= 2 on each side.
  std::vector<WordTuple> tuples = enumerate_box({2, 1}, {2, 2});
  for (const WordTuple& alpha : tuples) {
    for (const WordTuple& beta : tuples) {
      if (alpha.total_length() > 2 || beta.total_length() > 2) continue;
      WordPairExpr expr{{alpha, beta, cd(1.0, 0.0)}};
      Mat direct = transform_direct(q, x, expr);
      Mat via = transform_via_kernel(kern, expr);
      CHECK((direct - via).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }

  // A combined expression with complex weights.
  WordPairExpr expr{{tuples[1], tuples[0], cd(0.5, -1.0)}, {tuples[2], tuples[3], cd(0.0, 2.0)}};
  Mat direct = transform_direct(q, x, expr);
  Mat via = transform_via_kernel(kern, expr);
  CHECK((direct - via).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("weighted-domain kernel: quadratic single-letter factor") {
  // q = Z + Z^2 at the scalar point 0.4: weights b_t follow the Fibonacci
  // rule, the defect is 1 - 0.16 - 0.0256, and row t is sqrt(b_t * defect) * 0.4^t.
  NcPolynomial fib = NcPolynomial::validate(1, {{Word({1}), 1.0}, {Word({1, 1}), 1.0}});
  PolyTuple q{{fib}};
  BCoefficients bc(fib);
  BerezinKernel kern = build_kernel(q, scalar_tuple(0.4), {16});
  double defect = 1.0 - 0.16 - 0.4 * 0.4 * 0.4 * 0.4;
  for (int t = 0; t <= 16; ++t) {
    double expect = std::sqrt(bc.b(Word(std::vector<int>(t, 1))) * defect) * std::pow(0.4, t);
    CHECK(kern.k(t, 0).real() == doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK(isometry_residual(kern) <= 1e-6);
  // Top-row truncation leak: sqrt(b_cap * defect) * 0.4^(cap+1).
  double leak = std::sqrt(bc.b(Word(std::vector<int>(16, 1))) * defect) * std::pow(0.4, 17);
  CHECK(intertwining_residual(kern) == doctest::Approx(leak).epsilon(1e-9));
  // The tail bound is finite and dominates the actual isometry defect.
  CHECK(std::isfinite(kern.tail_bound));
  CHECK(kern.tail_bound * kern.tail_bound >= isometry_residual(kern) * (1.0 - 1e-9));
}

TEST_CASE("tail bound turns infinite at the boundary and the report says so") {
  PolyTuple q = PolyTuple::ball({1});
  BerezinKernel edge = build_kernel(q, scalar_tuple(1.0), {10});
  CHECK_FALSE(std::isfinite(edge.tail_bound));
  CHECK_FALSE(edge.tail_exact_zero);
  // Strictly inside, the bound decays geometrically with the cap.
  BerezinKernel a = build_kernel(q, scalar_tuple(0.9), {10});
  BerezinKernel b = build_kernel(q, scalar_tuple(0.9), {20});
  CHECK(std::isfinite(a.tail_bound));
  CHECK(b.tail_bound < a.tail_bound * std::pow(0.9, 9));
}

TEST_CASE("two-factor scalar point: kernel rows carry both factors' weights") {
  PolyTuple q = PolyTuple::ball({1, 1});
  OperatorTuple x;
  x.dim = 1;
  x.blocks = {{Mat::Constant(1, 1, cd(0.5, 0.0))}, {Mat::Constant(1, 1, cd(0.3, 0.0))}};
  BerezinKernel kern = build_kernel(q, x, {12, 12});
  // Defect: (1 - 0.25)(1 - 0.09); row (t1, t2) value sqrt(defect) 0.5^t1 0.3^t2.
  double defect = (1.0 - 0.25) * (1.0 - 0.09);
  long rows = kern.model->dim();
  for (long i = 0; i < rows; ++i) {
    WordTuple t = kern.model->tuple_at(i);
    double expect =
        std::sqrt(defect) * std::pow(0.5, t.parts[0].length()) * std::pow(0.3, t.parts[1].length());
    CHECK(kern.k(i, 0).real() == doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK(isometry_residual(kern) <= 1e-5);
}
