#pragma once
// Formal power series with matrix coefficients over word tuples, their
// homogeneous-level norms, two-sided model-norm brackets, evaluation on
// operator tuples with a tail estimate, and the level-wise analytic tests
// built on those quantities (boundedness of the scaled level sums, radius
// from level-norm roots, per-level coefficient bounds, degree bounds, and the
// gauge comparison for normalized series vanishing at the origin).

#include <limits>
#include <map>
#include <vector>

#include "ncpolydom/fock.hpp"
#include "ncpolydom/optuple.hpp"
#include "ncpolydom/poly.hpp"

namespace ncpolydom {

struct FormalSeries {
  std::vector<int> n;      // alphabet sizes per factor
  int coeff_dim = 1;
  std::map<WordTuple, Mat> terms;  // nonzero coefficient blocks

  static FormalSeries make(std::vector<int> n, int coeff_dim = 1);

  int k() const { return static_cast<int>(n.size()); }
  // Validates arity, letter ranges, and block dimensions; drops zero blocks.
  FormalSeries& set(const WordTuple& alpha, Mat block);
  // Sets the coefficient to c times the identity block.
  FormalSeries& set_scalar(const WordTuple& alpha, cd c);
  Mat coeff(const WordTuple& alpha) const;  // zero block if absent

  std::vector<int> degree_profile() const;  // per-factor max length
  int total_degree() const;

  FormalSeries minus(const FormalSeries& g) const;  // contexts must match
  FormalSeries scaled(cd factor) const;
  FormalSeries truncated_to_total(int m) const;  // keep terms of total degree <= m

  // Stored terms grouped by per-factor length profile.
  std::map<std::vector<int>, std::vector<const std::pair<const WordTuple, Mat>*>> levels() const;
};

// Homogeneous level norm: the square root of the largest eigenvalue of
// sum over the level of A* A / b.
double homogeneous_norm(const FormalSeries& f, const PolyTuple& q, const std::vector<int>& p);
double homogeneous_norm(const FormalSeries& f, const BProduct& b, const std::vector<int>& p);

struct NormBracket {
  double lower = 0.0, upper = 0.0;
};

// Upper bound only: sum over levels of (prod r^p) * homogeneous norm.
double model_norm_upper(const FormalSeries& f, const PolyTuple& q, const std::vector<double>& r);

// Bracket on the norm of the series evaluated on the r-scaled model operators:
// lower = numeric norm on the truncated model (an exact compression, hence a
// valid lower bound), upper = the level-sum bound above.
NormBracket model_norm(const FormalSeries& f, const PolyTuple& q, const std::vector<double>& r,
                       const std::vector<int>& caps, Exec mode = default_exec());

struct EvalResult {
  Mat value;           // (coeff_dim * operator dim) square
  double tail_estimate = 0.0;
  bool certified = false;
  double gauge = 0.0;  // Minkowski gauge of the point
  std::vector<double> level_bounds;  // per-total-degree bound used for the tail
};

// Sums the stored terms grouped by total degree (profiles in first-part-
// descending order within a degree).  The tail estimate extrapolates the
// per-degree bounds at the point's gauge by their trailing geometric ratio;
// certified is true when the estimate does not exceed tail_tol.
EvalResult evaluate(const FormalSeries& f, const PolyTuple& q, const OperatorTuple& x,
                    double tail_tol = 1e-6, Exec mode = default_exec());

struct LevelValue {
  std::vector<int> p;
  double value = 0.0;
};

struct AbelReport {
  bool bounded = false;
  double sup_value = 0.0;
  std::vector<double> level_max;   // index = total degree
  std::vector<LevelValue> values;  // per stored level
  bool growth_trend = false;
  int window = 0;
};

// Boundedness of (prod r^{2p}) * homnorm_p^2 over levels |p| <= p_max.
// Unbounded is flagged by a strict increase across the trailing window.
AbelReport abel_bounded_test(const FormalSeries& f, const PolyTuple& q,
                             const std::vector<double>& r, int p_max, int window = -1);

struct RadiusReport {
  double gamma = 0.0;       // +inf when the trailing window holds no nonzero root
  double inv_gamma = 0.0;   // max of homnorm_p^(1/|p|) over the trailing window
  bool entire = false;
  std::vector<double> level_roots;  // index = total degree, max root at that degree
  int p_max = 0;
  int window = 0;
};

RadiusReport polydomain_radius(const FormalSeries& f, const PolyTuple& q, int p_max,
                               int window = -1);

struct CauchyReport {
  bool ok = false;
  double min_slack = 0.0;
  std::vector<LevelValue> slacks;  // upper / prod r^p - homnorm_p per stored level
  NormBracket bound;
  double slack_tol = 1e-9;
};

// Per-level coefficient bound against the model-norm upper bracket.
CauchyReport cauchy_check(const FormalSeries& f, const PolyTuple& q, const std::vector<double>& r,
                          const std::vector<int>& caps, Exec mode = default_exec());

struct LiouvilleReport {
  bool consistent = false;
  double c = 0.0;
  double r_max = 0.0;
  std::vector<LevelValue> excess_norms;    // levels beyond the degree profile
  std::vector<LevelValue> forced_bounds;   // allowed value c / r_max^excess
  std::vector<std::vector<int>> violations;
};

// Degree-bound check: a series dominated by c * prod r^m on every scaled model
// forces the levels with excess over the profile m to obey
// homnorm_p <= c / r^excess; levels violating that at the largest grid radius
// are reported.
LiouvilleReport liouville_degree_bound(const FormalSeries& f, const PolyTuple& q,
                                       const std::vector<int>& m_profile, double c,
                                       const std::vector<double>& r_grid);

struct OmegaReport {
  bool in_class = false;
  AbelReport abel;
};

// Membership in the boundedness class at the given radii (the log-convexity
// carrier): a wrapper over the scaled level-sum boundedness test.
OmegaReport domain_membership_omega(const FormalSeries& f, const PolyTuple& q,
                                    const std::vector<double>& r, int p_max);

enum class SchwarzStatus { ok, nonzero_constant_term, norm_surrogate_exceeds_one };

struct SchwarzReport {
  SchwarzStatus status = SchwarzStatus::ok;
  double lhs = 0.0;        // norm of the series at the point
  double gauge = 0.0;      // Minkowski gauge of the point
  double slack = 0.0;      // gauge - lhs
  double surrogate = 0.0;  // max upper bracket over the surrogate radii
  std::vector<double> surrogate_grid;
  EvalResult eval;
};

// Gauge comparison for a series vanishing at the origin with sup-norm
// surrogate at most 1: the value norm must not exceed the gauge.
SchwarzReport schwarz_check(const FormalSeries& f, const PolyTuple& q, const OperatorTuple& x,
                            const std::vector<int>& caps, Exec mode = default_exec());

}  // namespace ncpolydom
