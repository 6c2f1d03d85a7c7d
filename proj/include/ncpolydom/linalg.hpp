#pragma once
// Shared linear-algebra plumbing: operator (spectral) norms for dense and
// sparse complex matrices, Hermitian eigen-helpers, and a clipped PSD square
// root.  Dense norms go through a Hermitian eigensolve of A*A; large or sparse
// operators use a deterministic Lanczos iteration (fixed seed, full
// reorthogonalization, residual-checked).

#include <complex>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace ncpolydom {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<cd>;

bool all_finite(const Mat& a);

// Largest singular value.  Throws std::invalid_argument on non-finite entries.
double operator_norm(const Mat& a);
double operator_norm(const SpMat& a);

Mat hermitian_part(const Mat& a);  // (A + A*)/2

// Smallest / largest eigenvalue of a Hermitian matrix (input assumed Hermitian).
double min_eig_hermitian(const Mat& h);
double max_eig_hermitian(const Mat& h);

struct PsdSqrt {
  Mat root;        // Hermitian PSD square root after clipping
  int rank = 0;    // eigenvalues > clip threshold
  double min_eig = 0.0;
  bool psd_ok = true;  // false if an eigenvalue fell below -eps
};

// Hermitian square root with eigenvalues in [-eps, 0) clipped to 0; psd_ok is
// false (and the negative part still clipped) if anything lies below -eps.
PsdSqrt psd_sqrt_clipped(const Mat& h, double eps);

}  // namespace ncpolydom
