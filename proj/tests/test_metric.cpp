#include <doctest.h>

#include <cmath>

#include "ncpolydom/metric.hpp"
#include "ncpolydom/rng.hpp"

using namespace ncpolydom;

namespace {

Word pow_word(int p) { return Word(std::vector<int>(p, 1)); }

// Partial sums of sum_j c^j Z^j up to degree L.
FormalSeries partial_geometric(double c, int L) {
  FormalSeries f = FormalSeries::make({1});
  for (int j = 0; j <= L; ++j) f.set_scalar(WordTuple({pow_word(j)}), cd(std::pow(c, j), 0.0));
  return f;
}

FormalSeries random_series(PortableRng& rng, int degree, double scale) {
  FormalSeries f = FormalSeries::make({1});
  for (int j = 0; j <= degree; ++j)
    f.set_scalar(WordTuple({pow_word(j)}), cd(scale * rng.normal(), scale * rng.normal()));
  return f;
}

const PolyTuple kBall1 = PolyTuple::ball({1});
const std::vector<int> kCaps{24};

}  // namespace

TEST_CASE("radius ladder follows the halving rule") {
  CHECK(metric_radius(1) == 0.5);
  CHECK(metric_radius(3) == 0.875);
  CHECK(metric_radius(20) == 1.0 - std::pow(2.0, -20));
}

TEST_CASE("distance at one radius: scalar difference of monomials") {
  // F - G = 0.3 Z^2: model norm at radius r is exactly 0.3 r^2.
  FormalSeries f = FormalSeries::make({1});
  f.set_scalar(WordTuple({pow_word(2)}), cd(0.5, 0.0));
  FormalSeries g = FormalSeries::make({1});
  g.set_scalar(WordTuple({pow_word(2)}), cd(0.2, 0.0));
  NormBracket d = dr_distance(f, g, kBall1, 0.5, kCaps);
  CHECK(d.lower == doctest::Approx(0.3 * 0.25).epsilon(1e-10));
  CHECK(d.upper == doctest::Approx(0.3 * 0.25).epsilon(1e-12));
}

TEST_CASE("summed metric: identical series sit at the truncation floor") {
  PortableRng rng(31);
  FormalSeries f = random_series(rng, 6, 0.5);
  RhoResult self = rho_metric(f, f, kBall1, kCaps);
  CHECK(self.lo == 0.0);
  // Only the dropped ladder tail remains: 2^-20.
  CHECK(self.hi <= 2e-6);
  CHECK(self.m_terms == 20);
  REQUIRE(self.radii.size() == 20);
  CHECK(self.radii.front() == 0.5);
}

TEST_CASE("summed metric: symmetry is exact and scaling moves the value") {
  PortableRng rng(32);
  FormalSeries f = random_series(rng, 5, 0.4);
  FormalSeries g = random_series(rng, 5, 0.4);
  RhoResult fg = rho_metric(f, g, kBall1, kCaps);
  RhoResult gf = rho_metric(g, f, kBall1, kCaps);
  CHECK(fg.value == gf.value);  // bitwise: the same bracket computations
  CHECK(fg.lo == gf.lo);
  CHECK(fg.hi == gf.hi);
  CHECK(fg.value > 0.0);
}

TEST_CASE("summed metric: triangle inequality within interval bounds") {
  PortableRng rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    FormalSeries f = random_series(rng, 4, 0.3);
    FormalSeries g = random_series(rng, 4, 0.3);
    FormalSeries h = random_series(rng, 4, 0.3);
    RhoResult fh = rho_metric(f, h, kBall1, kCaps);
    RhoResult fg = rho_metric(f, g, kBall1, kCaps);
    RhoResult gh = rho_metric(g, h, kBall1, kCaps);
    // True values satisfy the triangle inequality; the certified statement
    // compares the lower endpoint against the sum of upper endpoints.
    CHECK(fh.lo <= fg.hi + gh.hi + 1e-12);
  }
}

TEST_CASE("metric dominated by one: x/(1+x) stays below one per ladder term") {
  FormalSeries f = partial_geometric(1.0, 30);
  FormalSeries zero = FormalSeries::make({1});
  RhoResult rho = rho_metric(f, zero, kBall1, {32});
  CHECK(rho.hi < 1.0);
  CHECK(rho.value > 0.3);  // far apart: the distance is large on every rung
}

TEST_CASE("residual traces certify Cauchy sequences and reject stalling ones") {
  std::vector<FormalSeries> seq;
  for (int m = 0; m <= 40; ++m) seq.push_back(partial_geometric(0.5, m));
  WeierstrassReport rep = weierstrass_limit(seq, kBall1, {0.5, 0.9}, 1e-4, {12});
  CHECK(rep.cauchy);
  for (const auto& tr : rep.traces) {
    CHECK(tr.cauchy);
    // Residuals decay geometrically: each is the single dropped monomial.
    CHECK(tr.residual_upper.front() > tr.residual_upper.back());
  }
  // The window restriction of the last element is the recovered limit.
  CHECK(rep.limit.coeff(WordTuple({pow_word(3)}))(0, 0).real() ==
        doctest::Approx(std::pow(0.5, 3)).epsilon(1e-12));
  // Fit distances to the limit shrink along the sequence.
  REQUIRE_FALSE(rep.fit.empty());
  CHECK(rep.fit.front().residual_upper.back() <= 1e-3);

  // An alternating sequence is not Cauchy at any radius.
  std::vector<FormalSeries> alt;
  FormalSeries a = FormalSeries::make({1});
  a.set_scalar(WordTuple({pow_word(1)}), cd(1.0, 0.0));
  FormalSeries b = FormalSeries::make({1});
  for (int m = 0; m < 12; ++m) alt.push_back(m % 2 ? a : b);
  WeierstrassReport bad = weierstrass_limit(alt, kBall1, {0.5}, 1e-6, {4});
  CHECK_FALSE(bad.cauchy);
}

TEST_CASE("local boundedness: growing families are flagged past the ceiling") {
  std::vector<FormalSeries> fine, blow;
  for (int m = 0; m <= 60; ++m) {
    fine.push_back(partial_geometric(0.9, m));
    FormalSeries g = partial_geometric(0.9, m);
    g.set_scalar(WordTuple({pow_word(2 * (m / 2))}), cd(std::pow(3.0, m), 0.0));
    blow.push_back(g);
  }
  BoundednessReport ok = locally_bounded_check(fine, kBall1, {0.5, 0.9});
  CHECK(ok.locally_bounded);
  CHECK(ok.flagged_radii.empty());

  BoundednessReport bad = locally_bounded_check(blow, kBall1, {0.5, 0.9});
  CHECK_FALSE(bad.locally_bounded);
  REQUIRE_FALSE(bad.flagged_radii.empty());
  // 3^m * 0.81^m grows without bound; 3^m * 0.25^m decays: only 0.9 is flagged.
  CHECK(bad.flagged_radii == std::vector<double>{0.9});
}

TEST_CASE("diagonal extraction: coefficient clusters are separated") {
  // Family alternating between two coefficient clusters plus tiny jitter:
  // the majority-half bisection must land inside one cluster.
  PortableRng rng(34);
  std::vector<FormalSeries> family;
  for (int m = 0; m < 24; ++m) {
    double center = (m % 3 == 0) ? 1.0 : 0.2;  // minority cluster at 1.0
    FormalSeries f = FormalSeries::make({1});
    f.set_scalar(WordTuple({pow_word(0)}), cd(center + 1e-6 * rng.normal(), 0.0));
    f.set_scalar(WordTuple({pow_word(1)}), cd(0.5, 0.0));
    family.push_back(f);
  }
  MontelReport rep = montel_extract(family, kBall1, {6}, {0.5, 0.9}, 1e-3);
  REQUIRE(rep.status == MontelStatus::ok);
  CHECK(rep.subsequence.size() >= 2);
  // The kept members all sit in the majority cluster.
  for (int idx : rep.subsequence) CHECK(idx % 3 != 0);
  CHECK(rep.limit.coeff(WordTuple({pow_word(0)}))(0, 0).real() == doctest::Approx(0.2).epsilon(1e-3));
  // Distances from the kept members to the extracted limit are small.
  for (const auto& tr : rep.fit)
    for (double r : tr.residual_upper) CHECK(r <= 2e-3);

  MontelReport bad = montel_extract({family[0]}, kBall1, {6}, {0.5}, 1e-3);
  CHECK(bad.status == MontelStatus::too_few_members);
}

TEST_CASE("convergence propagation: certified at one radius extends to the grid") {
  std::vector<FormalSeries> seq;
  for (int m = 0; m <= 80; ++m) seq.push_back(partial_geometric(0.9, m));
  std::vector<double> grid{0.1, 0.3, 0.5, 0.7, 0.9};
  VitaliReport good = vitali_check(seq, kBall1, 0.5, grid, 1e-4);
  CHECK(good.status == VitaliStatus::converges);
  CHECK(good.at_point.cauchy);
  CHECK(good.traces.size() == grid.size());

  // Bounded but stalling at the outer radius: plain unit-coefficient partial
  // sums are Cauchy at 0.5 yet their residuals stay 1 at radius 1.
  std::vector<FormalSeries> stall;
  for (int m = 0; m <= 60; ++m) stall.push_back(partial_geometric(1.0, m));
  VitaliReport diverge = vitali_check(stall, kBall1, 0.5, {0.5, 1.0}, 1e-6);
  CHECK(diverge.status == VitaliStatus::diverges_at_radius);
  CHECK(diverge.failed_radius == 1.0);

  // Not Cauchy at the interior point itself.
  std::vector<FormalSeries> alt;
  FormalSeries a = FormalSeries::make({1});
  a.set_scalar(WordTuple({pow_word(1)}), cd(1.0, 0.0));
  for (int m = 0; m < 10; ++m) alt.push_back(m % 2 ? a : FormalSeries::make({1}));
  VitaliReport bad = vitali_check(alt, kBall1, 0.5, {0.5, 0.9}, 1e-6);
  CHECK(bad.status == VitaliStatus::not_cauchy_at_interior_point);
}

TEST_CASE("sampled maximum stays inside the model bracket") {
  PortableRng rng(35);
  FormalSeries f = random_series(rng, 5, 0.5);
  MaxProbeReport rep = max_principle_probe(f, kBall1, 0.5, kCaps, 60, 99, {2});
  CHECK(rep.samples == 60);
  CHECK(rep.seed == 99);
  CHECK(rep.witness == rep.bracket.lower);
  CHECK(rep.sampled_max <= rep.bracket.upper + 1e-8);
  CHECK(rep.argmax >= 0);
  CHECK(rep.argmax < 60);
  // Determinism: the same seed reproduces the same probe bitwise.
  MaxProbeReport again = max_principle_probe(f, kBall1, 0.5, kCaps, 60, 99, {2});
  CHECK(again.sampled_max == rep.sampled_max);
  CHECK(again.argmax == rep.argmax);
}
