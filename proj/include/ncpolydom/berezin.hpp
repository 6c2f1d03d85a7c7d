#pragma once
// The noncommutative kernel attached to an operator tuple in the closed
// domain: row block for the basis tuple beta is
//   sqrt(b_beta) * defect_root * X*_{1,beta_1} ... X*_{k,beta_k},
// assembled over the truncated tensor model, together with its verification
// residuals (isometry for pure tuples, creation-operator intertwining), a
// rigorous bound on the dropped rows, and the induced transform that sends a
// span element W_alpha W_beta* to X_alpha X_beta*.

#include <memory>
#include <vector>

#include "ncpolydom/fock.hpp"
#include "ncpolydom/optuple.hpp"

namespace ncpolydom {

struct WordPairTerm {
  WordTuple alpha, beta;
  cd c{1.0, 0.0};
};
using WordPairExpr = std::vector<WordPairTerm>;

struct BerezinKernel {
  PolyTuple q;
  OperatorTuple x;
  std::vector<int> caps;
  std::shared_ptr<const TensorModel> model;
  Mat k;                 // (model dim * operator dim) x operator dim
  Mat defect_on_identity;
  Mat defect_root;       // clipped PSD square root
  int defect_rank = 0;
  double defect_min_eig = 0.0;
  double eps_psd = 0.0;
  double cross_residual = 0.0;
  double tail_bound = 0.0;  // operator-norm bound on the dropped rows; inf if uncertified
  bool tail_exact_zero = false;
};

// Builds the kernel.  Throws std::invalid_argument if cross-factor blocks do
// not commute within tolerance, if the tuple is outside the closed domain
// within tolerance, or if the defect has an eigenvalue below -eps.
// eps_psd < 0 selects the default 1e-10 * (1 + defect norm).
BerezinKernel build_kernel(const PolyTuple& q, const OperatorTuple& x, std::vector<int> caps,
                           double eps_psd = -1.0, Exec mode = default_exec());

// Norm of K*K - I (zero for pure tuples up to truncation and round-off).
double isometry_residual(const BerezinKernel& kern);

// Max over (i, j) of the norm of K X*_{i,j} - (W*_{i,j} tensor I) K.
double intertwining_residual(const BerezinKernel& kern);

// Direct transform: sum of c * X_alpha X_beta* over the expression.
// Requires closed-domain membership within tolerance.
Mat transform_direct(const PolyTuple& q, const OperatorTuple& x, const WordPairExpr& expr,
                     Exec mode = default_exec());

// Same transform routed through the kernel: K* (g tensor I) K with
// g = sum c W_alpha W_beta* on the truncated model.
Mat transform_via_kernel(const BerezinKernel& kern, const WordPairExpr& expr);

}  // namespace ncpolydom
