#include "ncpolydom/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ncpolydom {

FormalSeries FormalSeries::make(std::vector<int> n, int coeff_dim) {
  for (int ni : n)
    if (ni < 1) throw std::invalid_argument("alphabet size must be positive");
  if (coeff_dim < 1) throw std::invalid_argument("coefficient dimension must be positive");
  FormalSeries f;
  f.n = std::move(n);
  f.coeff_dim = coeff_dim;
  return f;
}

FormalSeries& FormalSeries::set(const WordTuple& alpha, Mat block) {
  if (alpha.k() != k()) throw std::invalid_argument("word tuple arity does not match series");
  for (int i = 0; i < k(); ++i)
    if (!alpha.parts[i].valid_for(n[i]))
      throw std::invalid_argument("letter out of range in word tuple " + alpha.str());
  if (block.rows() != coeff_dim || block.cols() != coeff_dim)
    throw std::invalid_argument("coefficient block dimension mismatch at " + alpha.str());
  if (!all_finite(block)) throw std::invalid_argument("non-finite coefficient at " + alpha.str());
  if (block.cwiseAbs().maxCoeff() == 0.0)
    terms.erase(alpha);
  else
    terms[alpha] = std::move(block);
  return *this;
}

FormalSeries& FormalSeries::set_scalar(const WordTuple& alpha, cd c) {
  return set(alpha, Mat(c * Mat::Identity(coeff_dim, coeff_dim)));
}

Mat FormalSeries::coeff(const WordTuple& alpha) const {
  auto it = terms.find(alpha);
  return it == terms.end() ? Mat(Mat::Zero(coeff_dim, coeff_dim)) : it->second;
}

std::vector<int> FormalSeries::degree_profile() const {
  std::vector<int> p(k(), 0);
  for (const auto& [t, a] : terms)
    for (int i = 0; i < k(); ++i) p[i] = std::max(p[i], t.parts[i].length());
  return p;
}

int FormalSeries::total_degree() const {
  int m = 0;
  for (const auto& [t, a] : terms) m = std::max(m, t.total_length());
  return m;
}

FormalSeries FormalSeries::minus(const FormalSeries& g) const {
  if (n != g.n || coeff_dim != g.coeff_dim) throw std::invalid_argument("series contexts differ");
  FormalSeries out = *this;
  for (const auto& [t, a] : g.terms) {
    Mat d = out.coeff(t) - a;
    out.set(t, std::move(d));
  }
  return out;
}

FormalSeries FormalSeries::scaled(cd factor) const {
  FormalSeries out = make(n, coeff_dim);
  if (factor == cd(0.0, 0.0)) return out;
  for (const auto& [t, a] : terms) out.terms[t] = factor * a;
  return out;
}

FormalSeries FormalSeries::truncated_to_total(int m) const {
  FormalSeries out = make(n, coeff_dim);
  for (const auto& [t, a] : terms)
    if (t.total_length() <= m) out.terms[t] = a;
  return out;
}

std::map<std::vector<int>, std::vector<const std::pair<const WordTuple, Mat>*>> FormalSeries::levels()
    const {
  std::map<std::vector<int>, std::vector<const std::pair<const WordTuple, Mat>*>> by;
  for (const auto& entry : terms) by[entry.first.profile()].push_back(&entry);
  return by;
}

double homogeneous_norm(const FormalSeries& f, const BProduct& b, const std::vector<int>& p) {
  Mat gram = Mat::Zero(f.coeff_dim, f.coeff_dim);
  for (const auto& [t, a] : f.terms)
    if (t.profile() == p) gram += (a.adjoint() * a) / b(t);
  double lmax = max_eig_hermitian(gram);
  return lmax > 0.0 ? std::sqrt(lmax) : 0.0;
}

double homogeneous_norm(const FormalSeries& f, const PolyTuple& q, const std::vector<int>& p) {
  if (q.alphabet_sizes() != f.n) throw std::invalid_argument("series and polynomial contexts differ");
  return homogeneous_norm(f, BProduct(q), p);
}

static double radial_weight(const std::vector<double>& r, const std::vector<int>& p) {
  double w = 1.0;
  for (std::size_t i = 0; i < p.size(); ++i) w *= std::pow(r[i], p[i]);
  return w;
}

double model_norm_upper(const FormalSeries& f, const PolyTuple& q, const std::vector<double>& r) {
  if (q.alphabet_sizes() != f.n) throw std::invalid_argument("series and polynomial contexts differ");
  if (static_cast<int>(r.size()) != f.k()) throw std::invalid_argument("radius arity mismatch");
  for (double ri : r)
    if (!(ri >= 0.0)) throw std::invalid_argument("radius must be nonnegative");
  BProduct b(q);
  double upper = 0.0;
  for (const auto& [p, entries] : f.levels()) {
    (void)entries;
    upper += radial_weight(r, p) * homogeneous_norm(f, b, p);
  }
  return upper;
}

NormBracket model_norm(const FormalSeries& f, const PolyTuple& q, const std::vector<double>& r,
                       const std::vector<int>& caps, Exec mode) {
  NormBracket out;
  out.upper = model_norm_upper(f, q, r);

  TensorModel model(q, caps);
  const long fdim = model.dim();
  const int dk = f.coeff_dim;
  std::vector<const std::pair<const WordTuple, Mat>*> terms;
  terms.reserve(f.terms.size());
  for (const auto& entry : f.terms) terms.push_back(&entry);

  auto slots = map_indexed<std::vector<Eigen::Triplet<cd>>>(
      mode, static_cast<long>(terms.size()), [&](long ti) {
        const auto& [tuple, block] = *terms[static_cast<std::size_t>(ti)];
        double scale = radial_weight(r, tuple.profile());
        std::vector<Eigen::Triplet<cd>> trips;
        for (const SparseEntry& e : model.word_op_entries(tuple)) {
          for (int cr = 0; cr < dk; ++cr)
            for (int cc = 0; cc < dk; ++cc) {
              cd v = block(cr, cc) * (scale * e.weight);
              if (v != cd(0.0, 0.0))
                trips.emplace_back(static_cast<int>(cr * fdim + e.row),
                                   static_cast<int>(cc * fdim + e.col), v);
            }
        }
        return trips;
      });
  std::vector<Eigen::Triplet<cd>> all;
  for (const auto& s : slots) all.insert(all.end(), s.begin(), s.end());
  SpMat m(dk * fdim, dk * fdim);
  m.setFromTriplets(all.begin(), all.end());
  out.lower = operator_norm(m);
  return out;
}

EvalResult evaluate(const FormalSeries& f, const PolyTuple& q, const OperatorTuple& x,
                    double tail_tol, Exec mode) {
  if (q.alphabet_sizes() != f.n) throw std::invalid_argument("series and polynomial contexts differ");
  x.check(f.n);
  const int d = x.dim, dk = f.coeff_dim;

  // Stored terms in total-degree order; within a degree, profiles with larger
  // leading parts first, then word order.
  std::vector<const std::pair<const WordTuple, Mat>*> terms;
  terms.reserve(f.terms.size());
  for (const auto& entry : f.terms) terms.push_back(&entry);
  std::sort(terms.begin(), terms.end(), [](const auto* a, const auto* b) {
    int ta = a->first.total_length(), tb = b->first.total_length();
    if (ta != tb) return ta < tb;
    auto pa = a->first.profile(), pb = b->first.profile();
    if (pa != pb) return pb < pa;  // leading-part-descending composition order
    return a->first < b->first;
  });

  auto slots = map_indexed<Mat>(mode, static_cast<long>(terms.size()), [&](long ti) -> Mat {
    const auto& [tuple, block] = *terms[static_cast<std::size_t>(ti)];
    Mat xprod = tuple_product(x, tuple);
    Mat out(dk * d, dk * d);
    for (int cr = 0; cr < dk; ++cr)
      for (int cc = 0; cc < dk; ++cc) out.block(cr * d, cc * d, d, d) = block(cr, cc) * xprod;
    return out;
  });
  EvalResult res;
  res.value = Mat::Zero(dk * d, dk * d);
  for (const Mat& s : slots) res.value += s;

  res.gauge = minkowski_functional(q, x, 1e-10, mode);
  const double s = res.gauge;

  // Per-total-degree bounds at the gauge: s^m * sum of level norms.
  BProduct b(q);
  std::map<int, double> level_norm_sum;
  for (const auto& [p, entries] : f.levels()) {
    (void)entries;
    int m = 0;
    for (int pi : p) m += pi;
    level_norm_sum[m] += homogeneous_norm(f, b, p);
  }
  int top = level_norm_sum.empty() ? 0 : level_norm_sum.rbegin()->first;
  res.level_bounds.assign(top + 1, 0.0);
  for (const auto& [m, v] : level_norm_sum) res.level_bounds[m] = std::pow(s, m) * v;

  double ratio = 0.0;
  bool have_ratio = false;
  double base = 0.0;
  {
    const int wlen = std::min<int>(5, top);
    for (int m = std::max(0, top - wlen); m + 1 <= top; ++m) {
      if (res.level_bounds[m] > 0.0 && res.level_bounds[m + 1] > 0.0) {
        ratio = std::max(ratio, res.level_bounds[m + 1] / res.level_bounds[m]);
        have_ratio = true;
      }
    }
    for (int m = top; m >= 0; --m)
      if (res.level_bounds[m] > 0.0) {
        base = res.level_bounds[m];
        break;
      }
  }
  if (s == 0.0 || base == 0.0)
    res.tail_estimate = 0.0;
  else if (!have_ratio || ratio >= 1.0)
    res.tail_estimate = have_ratio ? std::numeric_limits<double>::infinity() : base;
  else
    res.tail_estimate = base * ratio / (1.0 - ratio);
  res.certified = res.tail_estimate <= tail_tol;
  return res;
}

AbelReport abel_bounded_test(const FormalSeries& f, const PolyTuple& q,
                             const std::vector<double>& r, int p_max, int window) {
  if (q.alphabet_sizes() != f.n) throw std::invalid_argument("series and polynomial contexts differ");
  if (static_cast<int>(r.size()) != f.k()) throw std::invalid_argument("radius arity mismatch");
  if (p_max < 0) throw std::invalid_argument("level cap must be nonnegative");
  AbelReport rep;
  rep.window = window > 0 ? window : std::max(3, p_max / 4);
  rep.level_max.assign(p_max + 1, 0.0);
  BProduct b(q);
  for (const auto& [p, entries] : f.levels()) {
    (void)entries;
    int m = 0;
    for (int pi : p) m += pi;
    if (m > p_max) continue;
    double h = homogeneous_norm(f, b, p);
    double v = radial_weight(r, p);
    double value = v * v * h * h;  // squared radial weight times squared level norm
    rep.values.push_back({p, value});
    rep.level_max[m] = std::max(rep.level_max[m], value);
    rep.sup_value = std::max(rep.sup_value, value);
  }
  if (p_max >= 1) {
    int steps = std::min(rep.window, p_max);
    rep.growth_trend = steps > 0;
    for (int m = p_max - steps; m < p_max; ++m)
      if (!(rep.level_max[m + 1] > rep.level_max[m])) {
        rep.growth_trend = false;
        break;
      }
  }
  rep.bounded = !rep.growth_trend;
  return rep;
}

RadiusReport polydomain_radius(const FormalSeries& f, const PolyTuple& q, int p_max, int window) {
  if (q.alphabet_sizes() != f.n) throw std::invalid_argument("series and polynomial contexts differ");
  if (p_max < 1) throw std::invalid_argument("level cap must be positive");
  RadiusReport rep;
  rep.p_max = p_max;
  rep.window = window > 0 ? window : std::max(1, p_max / 2);
  rep.level_roots.assign(p_max + 1, 0.0);
  BProduct b(q);
  for (const auto& [p, entries] : f.levels()) {
    (void)entries;
    int m = 0;
    for (int pi : p) m += pi;
    if (m < 1 || m > p_max) continue;
    double h = homogeneous_norm(f, b, p);
    if (h <= 0.0) continue;
    rep.level_roots[m] = std::max(rep.level_roots[m], std::pow(h, 1.0 / m));
  }
  double inv = 0.0;
  for (int m = std::max(1, p_max - rep.window); m <= p_max; ++m)
    inv = std::max(inv, rep.level_roots[m]);
  rep.inv_gamma = inv;
  if (inv == 0.0) {
    rep.entire = true;
    rep.gamma = std::numeric_limits<double>::infinity();
  } else {
    rep.gamma = 1.0 / inv;
  }
  return rep;
}

CauchyReport cauchy_check(const FormalSeries& f, const PolyTuple& q, const std::vector<double>& r,
                          const std::vector<int>& caps, Exec mode) {
  CauchyReport rep;
  rep.bound = model_norm(f, q, r, caps, mode);
  BProduct b(q);
  rep.min_slack = std::numeric_limits<double>::infinity();
  for (const auto& [p, entries] : f.levels()) {
    (void)entries;
    double h = homogeneous_norm(f, b, p);
    double slack = rep.bound.upper / radial_weight(r, p) - h;
    rep.slacks.push_back({p, slack});
    rep.min_slack = std::min(rep.min_slack, slack);
  }
  if (rep.slacks.empty()) rep.min_slack = 0.0;
  rep.ok = rep.min_slack >= -rep.slack_tol;
  return rep;
}

LiouvilleReport liouville_degree_bound(const FormalSeries& f, const PolyTuple& q,
                                       const std::vector<int>& m_profile, double c,
                                       const std::vector<double>& r_grid) {
  if (q.alphabet_sizes() != f.n) throw std::invalid_argument("series and polynomial contexts differ");
  if (static_cast<int>(m_profile.size()) != f.k())
    throw std::invalid_argument("degree profile arity mismatch");
  if (r_grid.empty()) throw std::invalid_argument("radius grid is empty");
  LiouvilleReport rep;
  rep.c = c;
  rep.r_max = *std::max_element(r_grid.begin(), r_grid.end());
  if (!(rep.r_max > 0.0)) throw std::invalid_argument("radius grid must contain a positive value");
  BProduct b(q);
  for (const auto& [p, entries] : f.levels()) {
    (void)entries;
    int excess = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      excess = std::max(excess, p[i] - m_profile[i]);
    if (excess <= 0) continue;
    double h = homogeneous_norm(f, b, p);
    double allowed = c / std::pow(rep.r_max, excess);
    rep.excess_norms.push_back({p, h});
    rep.forced_bounds.push_back({p, allowed});
    if (h > allowed * (1.0 + 1e-12)) rep.violations.push_back(p);
  }
  rep.consistent = rep.violations.empty();
  return rep;
}

OmegaReport domain_membership_omega(const FormalSeries& f, const PolyTuple& q,
                                    const std::vector<double>& r, int p_max) {
  OmegaReport rep;
  rep.abel = abel_bounded_test(f, q, r, p_max);
  rep.in_class = rep.abel.bounded;
  return rep;
}

SchwarzReport schwarz_check(const FormalSeries& f, const PolyTuple& q, const OperatorTuple& x,
                            const std::vector<int>& caps, Exec mode) {
  (void)caps;
  SchwarzReport rep;
  rep.surrogate_grid = {0.9, 0.99, 0.999};
  if (f.terms.count(WordTuple::identity(f.k()))) {
    rep.status = SchwarzStatus::nonzero_constant_term;
    return rep;
  }
  for (double r : rep.surrogate_grid)
    rep.surrogate =
        std::max(rep.surrogate, model_norm_upper(f, q, std::vector<double>(f.k(), r)));
  if (rep.surrogate > 1.0 + 1e-9) {
    rep.status = SchwarzStatus::norm_surrogate_exceeds_one;
    return rep;
  }
  rep.eval = evaluate(f, q, x, std::numeric_limits<double>::infinity(), mode);
  rep.lhs = operator_norm(rep.eval.value);
  rep.gauge = rep.eval.gauge;
  rep.slack = rep.gauge - rep.lhs;
  return rep;
}

}  // namespace ncpolydom
