#include "ncpolydom/berezin.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ncpolydom {

namespace {

// Scalar majorant data for one factor: level sums T(l) of b_w times the
// product of squared block norms along w, their partial sum up to the cap, and
// a geometric bound on the remainder via the positive root of the associated
// characteristic equation.
struct FactorMajorant {
  double inside = 0.0;  // sum of T(l), l <= cap
  double tail = 0.0;    // certified bound on the rest; +inf when none
};

FactorMajorant factor_majorant(const NcPolynomial& q, const std::vector<Mat>& blocks, int cap) {
  std::vector<double> y(blocks.size());
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    double n = operator_norm(blocks[j]);
    y[j] = n * n;
  }
  const int deg = q.degree;
  std::vector<double> a(deg + 1, 0.0);
  for (const auto& [w, c] : q.terms) {
    double prod = c;
    for (int l : w.letters) prod *= y[l - 1];
    a[w.length()] += prod;
  }
  std::vector<double> t(std::max(cap + 1, deg), 0.0);
  t[0] = 1.0;
  for (int l = 1; l < static_cast<int>(t.size()); ++l)
    for (int d = 1; d <= std::min(deg, l); ++d) t[l] += a[d] * t[l - d];

  FactorMajorant out;
  for (int l = 0; l <= cap; ++l) out.inside += t[l];

  double total_a = 0.0;
  for (int d = 1; d <= deg; ++d) total_a += a[d];
  if (total_a == 0.0) {
    out.tail = 0.0;  // all blocks are zero
    return out;
  }
  auto chi = [&](double xx) {
    double s = 0.0;
    for (int d = 1; d <= deg; ++d) s += a[d] / std::pow(xx, d);
    return s;
  };
  // chi is decreasing; keep chi(hi) <= 1 <= chi(lo) and return hi, so the
  // geometric bound below is certified with the returned rate.
  double lo = 1e-12, hi = std::max(1.0, 2.0 * total_a);
  while (chi(hi) > 1.0) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (chi(mid) <= 1.0 ? hi : lo) = mid;
  }
  const double rate = hi;
  if (rate >= 1.0) {
    out.tail = std::numeric_limits<double>::infinity();
    return out;
  }
  double c0 = 0.0;
  for (int m = 0; m < deg; ++m) c0 = std::max(c0, t[m] / std::pow(rate, m));
  out.tail = c0 * std::pow(rate, cap + 1) / (1.0 - rate) * (1.0 + 1e-9);
  return out;
}

}  // namespace

BerezinKernel build_kernel(const PolyTuple& q, const OperatorTuple& x, std::vector<int> caps,
                           double eps_psd, Exec mode) {
  x.check(q.alphabet_sizes());
  MembershipReport mem = membership(q, x, MembershipMode::closed, eps_psd, mode);
  if (!mem.closed_ok)
    throw std::invalid_argument("tuple is outside the closed domain within tolerance");

  BerezinKernel kern;
  kern.q = q;
  kern.x = x;
  kern.caps = caps;
  kern.cross_residual = mem.cross_residual;
  kern.eps_psd = mem.eps_used;
  kern.model = std::make_shared<TensorModel>(q, caps);

  kern.defect_on_identity = defect(q, x, std::vector<int>(q.k(), 1), mode);
  PsdSqrt root = psd_sqrt_clipped(hermitian_part(kern.defect_on_identity), kern.eps_psd);
  if (!root.psd_ok)
    throw std::invalid_argument("defect on the identity is not PSD within tolerance");
  kern.defect_root = root.root;
  kern.defect_rank = root.rank;
  kern.defect_min_eig = root.min_eig;

  const TensorModel& model = *kern.model;
  const int d = x.dim;
  const long fdim = model.dim();

  // Adjoint word products per factor, indexed like the factor bases.
  std::vector<std::vector<Mat>> adjw(q.k());
  for (int i = 0; i < q.k(); ++i) {
    adjw[i].resize(model.factor_dim(i));
    for (int u = 0; u < model.factor_dim(i); ++u)
      adjw[i][u] = word_product(x, i, model.factor_words(i)[u]).adjoint();
  }

  kern.k = Mat::Zero(fdim * d, d);
  for_indexed(mode, fdim, [&](long t) {
    WordTuple beta = model.tuple_at(t);
    Mat block = kern.defect_root;
    for (int i = 0; i < q.k(); ++i) {
      int u = model.factor_word_index(i, beta.parts[i]);
      block = block * adjw[i][u];
    }
    kern.k.block(t * d, 0, d, d) = std::sqrt(model.b_product_at(t)) * block;
  });

  // Tail: exact zero when strictly nilpotent blocks die inside the caps,
  // otherwise a geometric majorant per factor.
  if (strictly_upper_triangular(x)) {
    bool dead = true;
    for (int i = 0; i < q.k(); ++i)
      if (caps[i] < d - 1) dead = false;
    if (dead) {
      kern.tail_bound = 0.0;
      kern.tail_exact_zero = true;
      return kern;
    }
  }
  double inside_prod = 1.0, full_prod = 1.0;
  for (int i = 0; i < q.k(); ++i) {
    FactorMajorant fm = factor_majorant(q.polys[i], x.blocks[i], caps[i]);
    inside_prod *= fm.inside;
    full_prod *= fm.inside + fm.tail;
  }
  double dnorm = operator_norm(kern.defect_on_identity);
  double mass = dnorm * (full_prod - inside_prod);
  kern.tail_bound = std::isfinite(mass) ? std::sqrt(std::max(mass, 0.0))
                                        : std::numeric_limits<double>::infinity();
  return kern;
}

double isometry_residual(const BerezinKernel& kern) {
  const int d = kern.x.dim;
  Mat gram = kern.k.adjoint() * kern.k;
  return operator_norm(Mat(gram - Mat::Identity(d, d)));
}

double intertwining_residual(const BerezinKernel& kern) {
  const TensorModel& model = *kern.model;
  const int d = kern.x.dim;
  const long fdim = model.dim();
  double worst = 0.0;
  for (int i = 0; i < model.k(); ++i) {
    for (int j = 1; j <= model.q().polys[i].n; ++j) {
      Mat lhs = kern.k * kern.x.blocks[i][j - 1].adjoint();
      Mat rhs = Mat::Zero(fdim * d, d);
      // (W*_{i,j} tensor I) K: row block t picks up the block of the tuple
      // with g_j prepended to part i, weighted by the creation weight.
      for (long t = 0; t < fdim; ++t) {
        WordTuple tup = model.tuple_at(t);
        Word raised = Word({j}).concat(tup.parts[i]);
        int v = model.factor_word_index(i, raised);
        if (v < 0) continue;
        int u = model.factor_word_index(i, tup.parts[i]);
        double w = std::sqrt(model.factor_b(i, u) / model.factor_b(i, v));
        WordTuple up = tup;
        up.parts[i] = raised;
        long s = model.index_of(up);
        rhs.block(t * d, 0, d, d) = w * kern.k.block(s * d, 0, d, d);
      }
      worst = std::max(worst, operator_norm(Mat(lhs - rhs)));
    }
  }
  return worst;
}

Mat transform_direct(const PolyTuple& q, const OperatorTuple& x, const WordPairExpr& expr,
                     Exec mode) {
  x.check(q.alphabet_sizes());
  MembershipReport mem = membership(q, x, MembershipMode::closed, -1.0, mode);
  if (!mem.closed_ok)
    throw std::invalid_argument("tuple is outside the closed domain within tolerance");
  Mat acc = Mat::Zero(x.dim, x.dim);
  auto slots = map_indexed<Mat>(mode, static_cast<long>(expr.size()), [&](long t) -> Mat {
    const WordPairTerm& term = expr[static_cast<std::size_t>(t)];
    return term.c * (tuple_product(x, term.alpha) * tuple_product(x, term.beta).adjoint());
  });
  for (const Mat& s : slots) acc += s;
  return acc;
}

Mat transform_via_kernel(const BerezinKernel& kern, const WordPairExpr& expr) {
  const TensorModel& model = *kern.model;
  const int d = kern.x.dim;
  const long fdim = model.dim();
  SpMat g(fdim, fdim);
  for (const WordPairTerm& term : expr) {
    SpMat wa = model.word_op(term.alpha);
    SpMat wb = model.word_op(term.beta);
    g = g + SpMat(term.c * (wa * SpMat(wb.adjoint())));
  }
  Mat lifted = Mat::Zero(fdim * d, d);
  for (int outer = 0; outer < g.outerSize(); ++outer)
    for (SpMat::InnerIterator it(g, outer); it; ++it)
      lifted.block(it.row() * d, 0, d, d) += it.value() * kern.k.block(it.col() * d, 0, d, d);
  return kern.k.adjoint() * lifted;
}

}  // namespace ncpolydom
