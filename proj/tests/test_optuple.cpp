#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ncpolydom/fock.hpp"
#include "ncpolydom/optuple.hpp"

using namespace ncpolydom;

namespace {

NcPolynomial fib_poly() {
  return NcPolynomial::validate(1, {{Word({1}), 1.0}, {Word({1, 1}), 1.0}});
}

OperatorTuple scalar_tuple(double v) {
  OperatorTuple x;
  x.dim = 1;
  x.blocks = {{Mat::Constant(1, 1, cd(v, 0.0))}};
  return x;
}

// Positive root of x^2 + x^4 = 1: the boundary radius of the scalar domain of
// the quadratic single-letter polynomial.
const double kFibBoundary = std::sqrt((std::sqrt(5.0) - 1.0) / 2.0);

// The truncated-model tuple as an OperatorTuple (dense blocks).
OperatorTuple model_tuple(const TensorModel& model) {
  OperatorTuple w;
  w.dim = static_cast<int>(model.dim());
  w.blocks.resize(model.k());
  for (int i = 0; i < model.k(); ++i)
    for (int j = 1; j <= model.q().polys[i].n; ++j) w.blocks[i].push_back(Mat(model.ambient(i, j)));
  return w;
}

}  // namespace

TEST_CASE("tuple validation catches shape and arity errors") {
  OperatorTuple x = scalar_tuple(0.5);
  CHECK_NOTHROW(x.check({1}));
  CHECK_THROWS_AS(x.check({2}), std::invalid_argument);
  OperatorTuple bad = x;
  bad.blocks[0][0] = Mat::Zero(2, 2);
  CHECK_THROWS_AS(bad.check({1}), std::invalid_argument);
  CHECK(OperatorTuple::zeros({2, 1}, 3).is_zero());
}

TEST_CASE("word and tuple products multiply blocks left to right") {
  OperatorTuple x;
  x.dim = 2;
  Mat a(2, 2), b(2, 2);
  a << cd(0, 0), cd(1, 0), cd(0, 0), cd(0, 0);
  b << cd(2, 0), cd(0, 0), cd(0, 0), cd(3, 0);
  x.blocks = {{a, b}};
  Mat ab = word_product(x, 0, Word({1, 2}));
  CHECK((ab - Mat(a * b)).cwiseAbs().maxCoeff() == 0.0);
  Mat ba = word_product(x, 0, Word({2, 1}));
  CHECK((ba - Mat(b * a)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((word_product(x, 0, Word()) - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("scalar membership in the quadratic single-letter domain") {
  PolyTuple q{{fib_poly()}};
  // Inside the open domain.
  MembershipReport in = membership(q, scalar_tuple(0.5), MembershipMode::open);
  CHECK(in.verdict == MembershipVerdict::inside_open);
  CHECK(in.accepted);
  REQUIRE(in.margins.size() == 2);
  CHECK(in.margins[0].first == std::vector<int>{0});
  CHECK(in.margins[0].second == doctest::Approx(1.0));
  CHECK(in.margins[1].second == doctest::Approx(1.0 - 0.25 - 0.0625).epsilon(1e-14));

  // Just inside and just outside the boundary root.
  CHECK(membership(q, scalar_tuple(kFibBoundary - 1e-3), MembershipMode::open).accepted);
  MembershipReport out = membership(q, scalar_tuple(kFibBoundary + 1e-3), MembershipMode::closed);
  CHECK(out.verdict == MembershipVerdict::outside);
  CHECK_FALSE(out.accepted);

  // On the boundary: inside closed, not inside open.
  MembershipReport edge = membership(q, scalar_tuple(kFibBoundary), MembershipMode::closed);
  CHECK(edge.accepted);
  CHECK(edge.verdict == MembershipVerdict::on_or_inside_closed);
}

TEST_CASE("membership requires cross-factor commutation") {
  PolyTuple q = PolyTuple::ball({1, 1});
  OperatorTuple x;
  x.dim = 2;
  Mat a(2, 2), b(2, 2);
  a << cd(0, 0), cd(1, 0), cd(0, 0), cd(0, 0);
  b << cd(0, 0), cd(0, 0), cd(1, 0), cd(0, 0);
  x.blocks = {{a}, {b}};
  CHECK(cross_commutation_residual(x) > 0.1);
  CHECK_THROWS_WITH_AS(membership(q, x, MembershipMode::open),
                       doctest::Contains("do not commute"), std::invalid_argument);
}

TEST_CASE("scaled model tuples: margins, gauge, and the exact scaling law") {
  PolyTuple q{{fib_poly(), NcPolynomial::ball(2)}};
  TensorModel model(q, {4, 3});
  OperatorTuple w = model_tuple(model);

  for (double r : {0.3, 0.7}) {
    OperatorTuple rw = scaled(w, cd(r, 0.0));
    MembershipReport rep = membership(q, rw, MembershipMode::open);
    CHECK(rep.accepted);
    // The gauge of the truncated scaled model tuple is r, up to the open
    // verdict's PSD epsilon: the boundary margin vanishes like (1 - rho^2)^k,
    // so an epsilon of ~2e-10 shifts the bisection by O(r * sqrt(eps)).
    double gauge = minkowski_functional(q, rw, 1e-12);
    CHECK(gauge == doctest::Approx(r).epsilon(1e-4));
    CHECK(gauge >= r - 1e-9);
  }

  // The unscaled model tuple sits on the boundary: closed yes, open no.
  MembershipReport edge = membership(q, w, MembershipMode::closed);
  CHECK(edge.accepted);
  CHECK(edge.verdict == MembershipVerdict::on_or_inside_closed);
  CHECK_FALSE(membership(q, w, MembershipMode::open).accepted);
}

TEST_CASE("ball-factor defect margins follow the product law on scaled models") {
  // For the ball polynomial each factor defect on I at rW has smallest
  // eigenvalue 1 - r^2 (attained off the top level), so the full-defect
  // margin of the two-factor model is at least (1 - r^2)^2 at the vacuum.
  PolyTuple q = PolyTuple::ball({2, 2});
  TensorModel model(q, {3, 3});
  OperatorTuple w = model_tuple(model);
  double r = 0.6;
  MembershipReport rep = membership(q, scaled(w, cd(r, 0.0)), MembershipMode::open);
  REQUIRE(rep.margins.size() == 4);
  // Single-factor defects: margin exactly 1 - r^2.
  CHECK(rep.margins[1].second == doctest::Approx(1.0 - r * r).epsilon(1e-12));
  CHECK(rep.margins[2].second == doctest::Approx(1.0 - r * r).epsilon(1e-12));
  // Full defect margin: (1 - r^2)^2 at the vacuum direction.
  CHECK(rep.margins[3].second == doctest::Approx((1.0 - r * r) * (1.0 - r * r)).epsilon(1e-10));
}

TEST_CASE("gauge of a scalar point divides out the boundary radius") {
  PolyTuple q{{fib_poly()}};
  double gauge = minkowski_functional(q, scalar_tuple(0.5), 1e-12);
  CHECK(gauge == doctest::Approx(0.5 / kFibBoundary).epsilon(1e-9));
  CHECK(minkowski_functional(q, scalar_tuple(0.0)) == 0.0);
  // Homogeneity of degree one in the operator.
  double g2 = minkowski_functional(q, scalar_tuple(0.25), 1e-12);
  CHECK(g2 == doctest::Approx(gauge / 2.0).epsilon(1e-9));
}

TEST_CASE("purity: strict contractions are pure, the unit scalar is not") {
  PolyTuple ball1 = PolyTuple::ball({1});
  PurityReport pure = is_pure(ball1, scalar_tuple(0.6));
  CHECK(pure.pure);
  REQUIRE(pure.traces.size() == 1);
  // traces[i][m] holds the norm of Phi^(m+1)(I): 0.36^(m+1) for the scalar.
  CHECK(pure.traces[0][0] == doctest::Approx(0.36).epsilon(1e-12));
  CHECK(pure.traces[0][1] == doctest::Approx(0.36 * 0.36).epsilon(1e-12));

  PurityReport unit = is_pure(ball1, scalar_tuple(1.0));
  CHECK_FALSE(unit.pure);

  // Strictly nilpotent tuples are pure: the iterates vanish identically.
  PortableRng rng(7);
  OperatorTuple nil = random_nilpotent_tuple({2, 2}, {3, 3}, rng);
  CHECK(strictly_upper_triangular(nil));
  CHECK(is_pure(PolyTuple::ball({2, 2}), nil).pure);
}

TEST_CASE("random cross-factor tuples commute exactly by construction") {
  PortableRng rng(11);
  OperatorTuple x = random_tuple({2, 3}, {3, 4}, rng);
  CHECK(x.dim == 12);
  CHECK(cross_commutation_residual(x) == 0.0);
  CHECK_FALSE(strictly_upper_triangular(x));

  OperatorTuple nil = random_nilpotent_tuple({1, 2}, {4, 2}, rng);
  CHECK(cross_commutation_residual(nil) == 0.0);
  CHECK(strictly_upper_triangular(nil));
}

TEST_CASE("defect on commuting pairs matches the explicit expansion") {
  // k = 2 scalar tuple: defect (1,1) on I is (1 - x1^2)(1 - x2^2).
  PolyTuple q = PolyTuple::ball({1, 1});
  OperatorTuple x;
  x.dim = 1;
  x.blocks = {{Mat::Constant(1, 1, cd(0.5, 0.0))}, {Mat::Constant(1, 1, cd(0.7, 0.0))}};
  Mat d = defect(q, x, {1, 1});
  CHECK(d(0, 0).real() == doctest::Approx((1 - 0.25) * (1 - 0.49)).epsilon(1e-14));
  Mat d2 = defect(q, x, {2, 0});
  CHECK(d2(0, 0).real() == doctest::Approx((1 - 0.25) * (1 - 0.25)).epsilon(1e-14));
}
