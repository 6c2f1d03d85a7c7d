#pragma once
// The radial distance family d_r (model-norm bracket of a difference), the
// summed metric rho over the standard radius ladder r_m = 1 - 2^-m with
// interval arithmetic and an explicit truncation term, sequence convergence
// checks built on d_r (Cauchy verification, limit extraction, local
// boundedness, diagonal subsequence extraction, convergence propagation from
// one interior point), and the sampled maximum probe over a closed ball.

#include <cstdint>

#include "ncpolydom/series.hpp"

namespace ncpolydom {

// Radius ladder for the summed metric.
double metric_radius(int m);  // 1 - 2^-m

// d_r(F, G): model-norm bracket of F - G at radius r in every factor.
NormBracket dr_distance(const FormalSeries& f, const FormalSeries& g, const PolyTuple& q, double r,
                        const std::vector<int>& caps, Exec mode = default_exec());

struct RhoResult {
  double value = 0.0;        // midpoint of [lo, hi]
  double uncertainty = 0.0;  // half-width
  double lo = 0.0, hi = 0.0;
  int m_terms = 0;
  std::vector<double> radii;
  std::vector<NormBracket> dr;  // per ladder radius
};

// rho(F, G) = sum over m of 2^-m * d/(1+d) at radius r_m, with the summation
// truncated at m_terms and the dropped tail absorbed into the upper endpoint.
RhoResult rho_metric(const FormalSeries& f, const FormalSeries& g, const PolyTuple& q,
                     const std::vector<int>& caps, int m_terms = 20, Exec mode = default_exec());

struct SequenceTrace {
  double r = 0.0;
  std::vector<double> residual_upper;  // d_r(G_m, G_{m+1}) upper bounds
  bool cauchy = false;                 // trailing residuals below tol
};

struct WeierstrassReport {
  bool cauchy = false;  // on every radius
  double tol = 0.0;
  std::vector<SequenceTrace> traces;
  std::vector<int> window;     // coefficient box of the extracted limit
  FormalSeries limit;          // coefficientwise limit of the sequence, on the window
  std::vector<SequenceTrace> fit;  // d_r(G_m, limit) upper bounds
};

// Verifies the sequence is Cauchy in d_r on each grid radius (trailing
// residual upper bounds below tol), extracts the coefficientwise limit on the
// window box, and reports the distance of each element to it.
WeierstrassReport weierstrass_limit(const std::vector<FormalSeries>& seq, const PolyTuple& q,
                                    const std::vector<double>& r_grid, double tol,
                                    const std::vector<int>& window);

struct BoundednessReport {
  bool locally_bounded = false;
  double ceiling = 0.0;
  std::vector<double> radii;
  std::vector<std::vector<double>> values;  // [radius][member] upper bounds
  std::vector<double> flagged_radii;        // where growth past the ceiling was detected
};

// Per-radius upper bounds over the family; a family is flagged unbounded at a
// radius when the values exceed the ceiling and strictly grow across the
// trailing window.
BoundednessReport locally_bounded_check(const std::vector<FormalSeries>& family,
                                        const PolyTuple& q, const std::vector<double>& r_grid,
                                        double ceiling = 1e8);

enum class MontelStatus { ok, not_locally_bounded, too_few_members };

struct MontelReport {
  MontelStatus status = MontelStatus::ok;
  BoundednessReport bounds;
  std::vector<int> subsequence;  // extracted member indices
  std::vector<int> window;
  FormalSeries limit;            // coefficient means over the final subsequence
  std::vector<SequenceTrace> fit;  // d_r(F_i, limit) uppers along the subsequence
};

// Bolzano-Weierstrass diagonal extraction over the coefficient window:
// repeated 1-d bisection on each coefficient coordinate keeps the majority
// half (ties to the lower half) until the subsequence values agree within tol
// or only two members remain.
MontelReport montel_extract(const std::vector<FormalSeries>& family, const PolyTuple& q,
                            const std::vector<int>& window, const std::vector<double>& r_grid,
                            double tol, double ceiling = 1e8);

enum class VitaliStatus { converges, not_locally_bounded, not_cauchy_at_interior_point, diverges_at_radius };

struct VitaliReport {
  VitaliStatus status = VitaliStatus::converges;
  double failed_radius = 0.0;
  BoundednessReport bounds;
  SequenceTrace at_point;
  std::vector<SequenceTrace> traces;
};

// Convergence propagation: a locally bounded sequence Cauchy at one interior
// radius must be Cauchy on the whole grid; the first grid radius that fails is
// reported.
VitaliReport vitali_check(const std::vector<FormalSeries>& seq, const PolyTuple& q,
                          double interior_radius, const std::vector<double>& r_grid, double tol,
                          double ceiling = 1e8);

struct MaxProbeReport {
  NormBracket bracket;       // model-norm bracket at the probe radius
  double witness = 0.0;      // truncated-model witness value (the lower endpoint)
  double sampled_max = 0.0;  // max norm over sampled interior points
  long argmax = -1;
  int samples = 0;
  std::uint64_t seed = 0;
};

// Samples gauge-rescaled random tuples in the closed ball of the given radius
// and compares their values against the model bracket: no sample may exceed
// the upper endpoint, and the witness attains the lower endpoint.
MaxProbeReport max_principle_probe(const FormalSeries& f, const PolyTuple& q, double r,
                                   const std::vector<int>& caps, int samples, std::uint64_t seed,
                                   const std::vector<int>& sample_dims,
                                   Exec mode = default_exec());

}  // namespace ncpolydom
