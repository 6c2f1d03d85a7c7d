#include "ncpolydom/optuple.hpp"

#include <cmath>
#include <stdexcept>

namespace ncpolydom {

std::vector<int> OperatorTuple::alphabet_sizes() const {
  std::vector<int> n(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) n[i] = static_cast<int>(blocks[i].size());
  return n;
}

bool OperatorTuple::is_zero() const {
  for (const auto& row : blocks)
    for (const Mat& b : row)
      if (b.cwiseAbs().maxCoeff() != 0.0) return false;
  return true;
}

OperatorTuple OperatorTuple::zeros(const std::vector<int>& n, int dim) {
  OperatorTuple x;
  x.dim = dim;
  for (int ni : n) x.blocks.emplace_back(ni, Mat::Zero(dim, dim));
  return x;
}

void OperatorTuple::check(const std::vector<int>& n) const {
  if (blocks.size() != n.size()) throw std::invalid_argument("operator tuple arity mismatch");
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (static_cast<int>(blocks[i].size()) != n[i])
      throw std::invalid_argument("operator tuple alphabet size mismatch at factor " + std::to_string(i + 1));
    for (const Mat& b : blocks[i]) {
      if (b.rows() != dim || b.cols() != dim)
        throw std::invalid_argument("operator block dimension mismatch");
      if (!all_finite(b)) throw std::invalid_argument("non-finite entries in operator block");
    }
  }
}

OperatorTuple scaled(const OperatorTuple& x, cd factor) {
  OperatorTuple y = x;
  for (auto& row : y.blocks)
    for (Mat& b : row) b *= factor;
  return y;
}

double cross_commutation_residual(const OperatorTuple& x) {
  double worst = 0.0;
  for (int i = 0; i < x.k(); ++i)
    for (int i2 = i + 1; i2 < x.k(); ++i2)
      for (const Mat& a : x.blocks[i])
        for (const Mat& b : x.blocks[i2])
          worst = std::max(worst, operator_norm(Mat(a * b - b * a)));
  return worst;
}

double cross_commutation_tolerance(const OperatorTuple& x) {
  double m = 0.0;
  for (const auto& row : x.blocks)
    for (const Mat& b : row) m = std::max(m, operator_norm(b));
  return 1e-10 * std::max(1.0, m * m);
}

Mat word_product(const OperatorTuple& x, int i, const Word& alpha) {
  if (i < 0 || i >= x.k()) throw std::invalid_argument("factor index out of range");
  Mat p = Mat::Identity(x.dim, x.dim);
  for (int l : alpha.letters) {
    if (l < 1 || l > static_cast<int>(x.blocks[i].size()))
      throw std::invalid_argument("letter index out of range");
    p = p * x.blocks[i][l - 1];
  }
  return p;
}

Mat tuple_product(const OperatorTuple& x, const WordTuple& alpha) {
  if (alpha.k() != x.k()) throw std::invalid_argument("word tuple arity does not match operator tuple");
  Mat p = Mat::Identity(x.dim, x.dim);
  for (int i = 0; i < x.k(); ++i)
    if (!alpha.parts[i].is_identity()) p = p * word_product(x, i, alpha.parts[i]);
  return p;
}

Mat phi_apply(const NcPolynomial& q, const std::vector<Mat>& xi, const Mat& y, Exec mode) {
  if (static_cast<int>(xi.size()) != q.n)
    throw std::invalid_argument("block count does not match polynomial alphabet");
  const int d = static_cast<int>(y.rows());
  std::vector<std::pair<Mat, double>> terms;  // (X_beta, a_beta)
  terms.reserve(q.terms.size());
  for (const auto& [w, a] : q.terms) {
    Mat p = Mat::Identity(d, d);
    for (int l : w.letters) p = p * xi[l - 1];
    terms.emplace_back(std::move(p), a);
  }
  auto slots = map_indexed<Mat>(mode, static_cast<long>(terms.size()), [&](long t) -> Mat {
    const auto& [xb, a] = terms[static_cast<std::size_t>(t)];
    return a * (xb * y * xb.adjoint());
  });
  Mat acc = Mat::Zero(d, d);
  for (const Mat& s : slots) acc += s;
  return acc;
}

Mat defect(const PolyTuple& q, const OperatorTuple& x, const std::vector<int>& p, Exec mode) {
  x.check(q.alphabet_sizes());
  if (static_cast<int>(p.size()) != q.k())
    throw std::invalid_argument("exponent profile arity does not match polynomial tuple");
  Mat y = Mat::Identity(x.dim, x.dim);
  for (int i = q.k() - 1; i >= 0; --i) {
    if (p[i] < 0) throw std::invalid_argument("exponent must be nonnegative");
    for (int rep = 0; rep < p[i]; ++rep) y = y - phi_apply(q.polys[i], x.blocks[i], y, mode);
  }
  return y;
}

MembershipReport membership(const PolyTuple& q, const OperatorTuple& x, MembershipMode mode,
                            double eps_psd, Exec mode_exec) {
  x.check(q.alphabet_sizes());
  MembershipReport rep;
  rep.cross_residual = cross_commutation_residual(x);
  double ctol = cross_commutation_tolerance(x);
  if (rep.cross_residual > ctol)
    throw std::invalid_argument("cross-factor blocks do not commute within tolerance");

  const int k = q.k();
  Mat full = defect(q, x, std::vector<int>(k, 1), mode_exec);
  rep.defect_norm = operator_norm(full);
  rep.eps_used = eps_psd >= 0.0 ? eps_psd : 1e-10 * (1.0 + rep.defect_norm);

  double full_margin = 0.0;
  rep.closed_ok = true;
  for (long mask = 0; mask < (1L << k); ++mask) {
    std::vector<int> p(k);
    for (int i = 0; i < k; ++i) p[i] = (mask >> (k - 1 - i)) & 1;  // component 1 most significant
    Mat d = (mask == (1L << k) - 1) ? full : defect(q, x, p, mode_exec);
    double margin = min_eig_hermitian(hermitian_part(d));
    rep.margins.emplace_back(p, margin);
    if (mask == (1L << k) - 1) full_margin = margin;
    if (margin < -rep.eps_used) rep.closed_ok = false;
  }
  rep.open_ok = full_margin > rep.eps_used;
  rep.verdict = rep.open_ok     ? MembershipVerdict::inside_open
                : rep.closed_ok ? MembershipVerdict::on_or_inside_closed
                                : MembershipVerdict::outside;
  rep.accepted = mode == MembershipMode::open ? rep.open_ok : rep.closed_ok;
  return rep;
}

double minkowski_functional(const PolyTuple& q, const OperatorTuple& x, double tol, Exec mode) {
  x.check(q.alphabet_sizes());
  if (x.is_zero()) return 0.0;
  auto inside_open = [&](double r) {
    return membership(q, scaled(x, cd(1.0 / r, 0.0)), MembershipMode::open, -1.0, mode).open_ok;
  };
  double hi = 1.0;
  int guard = 0;
  while (!inside_open(hi)) {
    hi *= 2.0;
    if (++guard > 200) throw std::runtime_error("gauge bracket failed to close");
  }
  double lo = 0.0;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at floating resolution
    (inside_open(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

PurityReport is_pure(const PolyTuple& q, const OperatorTuple& x, int m_max, double tol, Exec mode) {
  x.check(q.alphabet_sizes());
  PurityReport rep;
  rep.tol = tol;
  rep.pure = true;
  for (int i = 0; i < q.k(); ++i) {
    std::vector<double> trace;
    Mat y = Mat::Identity(x.dim, x.dim);
    for (int m = 0; m < m_max; ++m) {
      y = phi_apply(q.polys[i], x.blocks[i], y, mode);
      trace.push_back(operator_norm(y));
      if (trace.back() < tol) break;
    }
    if (trace.empty() || trace.back() >= tol) rep.pure = false;
    rep.traces.push_back(std::move(trace));
  }
  return rep;
}

static Mat tensor_embed(const std::vector<int>& dims, int slot, const Mat& a) {
  Mat out = Mat::Identity(1, 1);
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const Mat& f = static_cast<int>(i) == slot ? a : Mat(Mat::Identity(dims[i], dims[i]));
    Mat next(out.rows() * f.rows(), out.cols() * f.cols());
    for (Eigen::Index r = 0; r < out.rows(); ++r)
      for (Eigen::Index c = 0; c < out.cols(); ++c)
        next.block(r * f.rows(), c * f.cols(), f.rows(), f.cols()) = out(r, c) * f;
    out = std::move(next);
  }
  return out;
}

static OperatorTuple random_tuple_impl(const std::vector<int>& n, const std::vector<int>& dims,
                                       PortableRng& rng, bool nilpotent) {
  if (n.size() != dims.size()) throw std::invalid_argument("alphabet and dimension lists differ");
  int dim = 1;
  for (int d : dims) dim *= d;
  OperatorTuple x;
  x.dim = dim;
  x.blocks.resize(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    for (int j = 0; j < n[i]; ++j) {
      const int d = dims[i];
      Mat a = Mat::Zero(d, d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
          if (nilpotent && c <= r) continue;
          a(r, c) = cd(rng.normal(), rng.normal()) / std::sqrt(2.0 * d);
        }
      x.blocks[i].push_back(tensor_embed(dims, static_cast<int>(i), a));
    }
  }
  return x;
}

OperatorTuple random_tuple(const std::vector<int>& n, const std::vector<int>& factor_dims,
                           PortableRng& rng) {
  return random_tuple_impl(n, factor_dims, rng, false);
}

OperatorTuple random_nilpotent_tuple(const std::vector<int>& n, const std::vector<int>& factor_dims,
                                     PortableRng& rng) {
  return random_tuple_impl(n, factor_dims, rng, true);
}

bool strictly_upper_triangular(const OperatorTuple& x) {
  for (const auto& row : x.blocks)
    for (const Mat& b : row)
      for (Eigen::Index r = 0; r < b.rows(); ++r)
        for (Eigen::Index c = 0; c <= r; ++c)
          if (b(r, c) != cd(0.0, 0.0)) return false;
  return true;
}

}  // namespace ncpolydom
