#include "ncpolydom/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ncpolydom/rng.hpp"

namespace ncpolydom {

bool all_finite(const Mat& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
  return true;
}

static double sigma_max_dense(const Mat& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  // Work with the smaller Gram matrix of the two.
  Mat g;
  if (a.cols() <= a.rows())
    g = a.adjoint() * a;
  else
    g = a * a.adjoint();
  Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
  double lmax = es.eigenvalues().maxCoeff();
  return lmax > 0.0 ? std::sqrt(lmax) : 0.0;
}

// Lanczos on the Hermitian PSD map x -> A*(A x), deterministic start vector,
// full reorthogonalization.  Returns sqrt of the top Ritz value once the
// residual bound certifies it to the requested relative tolerance.
template <class MatVec>
static double sigma_max_lanczos(Eigen::Index n, MatVec&& apply_gram, double rel_tol, int max_iter) {
  if (n == 0) return 0.0;
  PortableRng rng(0x5eedULL);
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cd(rng.normal(), rng.normal());
  double v0n = v.norm();
  v /= v0n;

  std::vector<Vec> basis;
  std::vector<double> alpha, beta;  // tridiagonal entries
  basis.push_back(v);
  double theta = 0.0;

  for (int it = 0; it < max_iter; ++it) {
    Vec w = apply_gram(basis.back());
    double a = std::real(basis.back().dot(w));
    alpha.push_back(a);
    w -= a * basis.back();
    if (basis.size() > 1) w -= beta.back() * basis[basis.size() - 2];
    // Full reorthogonalization keeps the basis numerically orthonormal.
    for (const Vec& u : basis) w -= u.dot(w) * u;
    double bnext = w.norm();

    // Top Ritz pair of the current tridiagonal.
    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    int top = 0;
    es.eigenvalues().maxCoeff(&top);
    theta = es.eigenvalues()(top);
    double last_comp = std::abs(es.eigenvectors()(m - 1, top));
    double resid = bnext * last_comp;  // bound on the distance to some eigenvalue
    double scale = std::max(std::abs(theta), 1e-300);
    if (resid <= rel_tol * scale || bnext <= 1e-14 * scale) break;
    if (static_cast<Eigen::Index>(basis.size()) >= n) break;
    beta.push_back(bnext);
    basis.push_back(w / bnext);
  }
  return theta > 0.0 ? std::sqrt(theta) : 0.0;
}

double operator_norm(const Mat& a) {
  if (!all_finite(a)) throw std::invalid_argument("non-finite entries");
  const Eigen::Index small = 700;
  if (a.rows() <= small || a.cols() <= small) return sigma_max_dense(a);
  Mat adj = a.adjoint();
  return sigma_max_lanczos(
      a.cols(), [&](const Vec& x) -> Vec { return adj * (a * x); }, 1e-12, 400);
}

double operator_norm(const SpMat& a) {
  for (int kk = 0; kk < a.outerSize(); ++kk)
    for (SpMat::InnerIterator it(a, kk); it; ++it)
      if (!std::isfinite(it.value().real()) || !std::isfinite(it.value().imag()))
        throw std::invalid_argument("non-finite entries");
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  const Eigen::Index small = 700;
  if (a.rows() <= small && a.cols() <= small) return sigma_max_dense(Mat(a));
  SpMat adj = a.adjoint();
  return sigma_max_lanczos(
      a.cols(), [&](const Vec& x) -> Vec { return adj * (a * x); }, 1e-12, 400);
}

Mat hermitian_part(const Mat& a) { return 0.5 * (a + a.adjoint()); }

double min_eig_hermitian(const Mat& h) {
  if (h.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_eig_hermitian(const Mat& h) {
  if (h.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

PsdSqrt psd_sqrt_clipped(const Mat& h, double eps) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  PsdSqrt out;
  out.min_eig = h.rows() ? es.eigenvalues().minCoeff() : 0.0;
  RVec lam = es.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) < -eps) out.psd_ok = false;
    if (lam(i) < 0.0) lam(i) = 0.0;
    if (lam(i) > eps) ++out.rank;
  }
  out.root = es.eigenvectors() * lam.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
  return out;
}

}  // namespace ncpolydom
