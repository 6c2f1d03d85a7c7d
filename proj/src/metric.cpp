#include "ncpolydom/metric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ncpolydom {

double metric_radius(int m) { return 1.0 - std::pow(2.0, -m); }

NormBracket dr_distance(const FormalSeries& f, const FormalSeries& g, const PolyTuple& q, double r,
                        const std::vector<int>& caps, Exec mode) {
  return model_norm(f.minus(g), q, std::vector<double>(f.k(), r), caps, mode);
}

RhoResult rho_metric(const FormalSeries& f, const FormalSeries& g, const PolyTuple& q,
                     const std::vector<int>& caps, int m_terms, Exec mode) {
  if (m_terms < 1) throw std::invalid_argument("term count must be positive");
  RhoResult out;
  out.m_terms = m_terms;
  FormalSeries diff = f.minus(g);
  // x -> x/(1+x) is increasing, so the bracket endpoints map to endpoints.
  for (int m = 1; m <= m_terms; ++m) {
    double r = metric_radius(m);
    out.radii.push_back(r);
    NormBracket br = model_norm(diff, q, std::vector<double>(f.k(), r), caps, mode);
    out.dr.push_back(br);
    double w = std::pow(2.0, -m);
    out.lo += w * (br.lower / (1.0 + br.lower));
    out.hi += w * (br.upper / (1.0 + br.upper));
  }
  out.hi += std::pow(2.0, -m_terms);  // dropped ladder tail, each term < 2^-m
  out.value = 0.5 * (out.lo + out.hi);
  out.uncertainty = 0.5 * (out.hi - out.lo);
  return out;
}

namespace {

// Upper-bound residual trace d_r(seq[m], seq[m+1]) with a trailing-window
// Cauchy verdict.
SequenceTrace residual_trace(const std::vector<FormalSeries>& seq, const PolyTuple& q, double r,
                             double tol) {
  SequenceTrace tr;
  tr.r = r;
  std::vector<double> rv;
  for (std::size_t m = 0; m + 1 < seq.size(); ++m)
    tr.residual_upper.push_back(
        model_norm_upper(seq[m].minus(seq[m + 1]), q, std::vector<double>(seq[m].k(), r)));
  if (tr.residual_upper.empty()) {
    tr.cauchy = true;
    return tr;
  }
  const int w = std::min<int>(3, static_cast<int>(tr.residual_upper.size()));
  tr.cauchy = true;
  for (int i = static_cast<int>(tr.residual_upper.size()) - w;
       i < static_cast<int>(tr.residual_upper.size()); ++i)
    if (tr.residual_upper[i] > tol) tr.cauchy = false;
  return tr;
}

SequenceTrace fit_trace(const std::vector<FormalSeries>& seq, const FormalSeries& limit,
                        const PolyTuple& q, double r) {
  SequenceTrace tr;
  tr.r = r;
  for (const FormalSeries& g : seq)
    tr.residual_upper.push_back(
        model_norm_upper(g.minus(limit), q, std::vector<double>(g.k(), r)));
  return tr;
}

FormalSeries window_restriction(const FormalSeries& f, const std::vector<int>& window) {
  FormalSeries out = FormalSeries::make(f.n, f.coeff_dim);
  for (const auto& [t, a] : f.terms) {
    bool inside = true;
    for (int i = 0; i < f.k(); ++i)
      if (t.parts[i].length() > window[i]) inside = false;
    if (inside) out.terms[t] = a;
  }
  return out;
}

}  // namespace

WeierstrassReport weierstrass_limit(const std::vector<FormalSeries>& seq, const PolyTuple& q,
                                    const std::vector<double>& r_grid, double tol,
                                    const std::vector<int>& window) {
  if (seq.empty()) throw std::invalid_argument("sequence is empty");
  if (static_cast<int>(window.size()) != seq.front().k())
    throw std::invalid_argument("window arity mismatch");
  WeierstrassReport rep;
  rep.tol = tol;
  rep.window = window;
  rep.cauchy = true;
  for (double r : r_grid) {
    rep.traces.push_back(residual_trace(seq, q, r, tol));
    if (!rep.traces.back().cauchy) rep.cauchy = false;
  }
  rep.limit = window_restriction(seq.back(), window);
  for (double r : r_grid) rep.fit.push_back(fit_trace(seq, rep.limit, q, r));
  return rep;
}

BoundednessReport locally_bounded_check(const std::vector<FormalSeries>& family,
                                        const PolyTuple& q, const std::vector<double>& r_grid,
                                        double ceiling) {
  if (family.empty()) throw std::invalid_argument("family is empty");
  BoundednessReport rep;
  rep.ceiling = ceiling;
  rep.locally_bounded = true;
  for (double r : r_grid) {
    rep.radii.push_back(r);
    std::vector<double> vals;
    for (const FormalSeries& f : family)
      vals.push_back(model_norm_upper(f, q, std::vector<double>(f.k(), r)));
    const int len = static_cast<int>(vals.size());
    bool above = *std::max_element(vals.begin(), vals.end()) > ceiling;
    const int w = std::min(3, len - 1);
    bool growing = w > 0;
    for (int i = len - 1 - w; i + 1 < len; ++i)
      if (!(vals[i + 1] > vals[i])) growing = false;
    if (above && growing) {
      rep.locally_bounded = false;
      rep.flagged_radii.push_back(r);
    }
    rep.values.push_back(std::move(vals));
  }
  return rep;
}

MontelReport montel_extract(const std::vector<FormalSeries>& family, const PolyTuple& q,
                            const std::vector<int>& window, const std::vector<double>& r_grid,
                            double tol, double ceiling) {
  if (family.size() < 2) {
    MontelReport rep;
    rep.status = MontelStatus::too_few_members;
    return rep;
  }
  MontelReport rep;
  rep.window = window;
  rep.bounds = locally_bounded_check(family, q, r_grid, ceiling);
  if (!rep.bounds.locally_bounded) {
    rep.status = MontelStatus::not_locally_bounded;
    return rep;
  }

  const FormalSeries& front = family.front();
  auto tuples = enumerate_box(front.n, window);
  std::vector<int> keep(family.size());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = static_cast<int>(i);

  // One real scalar coordinate at a time, diagonal-style: bisect the value
  // range, keep the majority half (ties to the lower), move to the next
  // coordinate with the surviving indices.
  for (const WordTuple& t : tuples) {
    for (int cr = 0; cr < front.coeff_dim; ++cr)
      for (int cc = 0; cc < front.coeff_dim; ++cc)
        for (int part = 0; part < 2; ++part) {
          auto coord = [&](int idx) {
            cd v = family[idx].coeff(t)(cr, cc);
            return part == 0 ? v.real() : v.imag();
          };
          while (static_cast<int>(keep.size()) > 2) {
            double lo = coord(keep.front()), hi = lo;
            for (int idx : keep) {
              lo = std::min(lo, coord(idx));
              hi = std::max(hi, coord(idx));
            }
            if (hi - lo <= tol) break;
            double mid = 0.5 * (lo + hi);
            std::vector<int> lower, upper;
            for (int idx : keep) (coord(idx) <= mid ? lower : upper).push_back(idx);
            keep = upper.size() > lower.size() ? std::move(upper) : std::move(lower);
          }
        }
  }
  rep.subsequence = keep;

  rep.limit = FormalSeries::make(front.n, front.coeff_dim);
  for (const WordTuple& t : tuples) {
    Mat mean = Mat::Zero(front.coeff_dim, front.coeff_dim);
    for (int idx : keep) mean += family[idx].coeff(t);
    mean /= static_cast<double>(keep.size());
    rep.limit.set(t, std::move(mean));
  }
  std::vector<FormalSeries> sub;
  for (int idx : keep) sub.push_back(window_restriction(family[idx], window));
  for (double r : r_grid) rep.fit.push_back(fit_trace(sub, rep.limit, q, r));
  return rep;
}

VitaliReport vitali_check(const std::vector<FormalSeries>& seq, const PolyTuple& q,
                          double interior_radius, const std::vector<double>& r_grid, double tol,
                          double ceiling) {
  if (seq.size() < 2) throw std::invalid_argument("sequence needs at least two members");
  VitaliReport rep;
  std::vector<double> all_r = r_grid;
  all_r.push_back(interior_radius);
  rep.bounds = locally_bounded_check(seq, q, all_r, ceiling);
  if (!rep.bounds.locally_bounded) {
    rep.status = VitaliStatus::not_locally_bounded;
    return rep;
  }
  rep.at_point = residual_trace(seq, q, interior_radius, tol);
  if (!rep.at_point.cauchy) {
    rep.status = VitaliStatus::not_cauchy_at_interior_point;
    return rep;
  }
  for (double r : r_grid) {
    rep.traces.push_back(residual_trace(seq, q, r, tol));
    if (!rep.traces.back().cauchy && rep.status == VitaliStatus::converges) {
      rep.status = VitaliStatus::diverges_at_radius;
      rep.failed_radius = r;
    }
  }
  return rep;
}

MaxProbeReport max_principle_probe(const FormalSeries& f, const PolyTuple& q, double r,
                                   const std::vector<int>& caps, int samples, std::uint64_t seed,
                                   const std::vector<int>& sample_dims, Exec mode) {
  if (samples < 0) throw std::invalid_argument("sample count must be nonnegative");
  MaxProbeReport rep;
  rep.samples = samples;
  rep.seed = seed;
  rep.bracket = model_norm(f, q, std::vector<double>(f.k(), r), caps, mode);
  rep.witness = rep.bracket.lower;

  auto slots = map_indexed<double>(mode, samples, [&](long i) {
    PortableRng rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(i + 1)));
    OperatorTuple y = random_tuple(f.n, sample_dims, rng);
    double gauge = minkowski_functional(q, y, 1e-10, Exec::serial);
    double u = 1.0 - rng.uniform();  // (0, 1]
    OperatorTuple x =
        gauge > 0.0 ? scaled(y, cd(r * u / gauge, 0.0)) : y;
    EvalResult ev = evaluate(f, q, x, std::numeric_limits<double>::infinity(), Exec::serial);
    return operator_norm(ev.value);
  });
  for (long i = 0; i < static_cast<long>(slots.size()); ++i) {
    if (slots[i] > rep.sampled_max) {
      rep.sampled_max = slots[i];
      rep.argmax = i;
    }
  }
  return rep;
}

}  // namespace ncpolydom
