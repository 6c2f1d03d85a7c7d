#pragma once
// Finite-dimensional operator tuples with one block row per factor, the
// completely positive maps a positive regular polynomial attaches to them,
// defect operators, domain membership, the Minkowski gauge of the domain, and
// purity of the associated iterates.  Blocks of different factors are required
// to commute (within tolerance) wherever a product across factors is taken.

#include <string>
#include <vector>

#include "ncpolydom/linalg.hpp"
#include "ncpolydom/parallel.hpp"
#include "ncpolydom/poly.hpp"
#include "ncpolydom/rng.hpp"

namespace ncpolydom {

struct OperatorTuple {
  int dim = 0;
  std::vector<std::vector<Mat>> blocks;  // [factor][letter-1], each dim x dim

  int k() const { return static_cast<int>(blocks.size()); }
  std::vector<int> alphabet_sizes() const;
  bool is_zero() const;

  static OperatorTuple zeros(const std::vector<int>& n, int dim);
  // Throws std::invalid_argument on shape mismatches or non-finite entries.
  void check(const std::vector<int>& n) const;
};

OperatorTuple scaled(const OperatorTuple& x, cd factor);

// Max commutator norm over pairs of blocks from different factors (0 for k=1).
double cross_commutation_residual(const OperatorTuple& x);
// Default tolerance: 1e-10 * max block norm squared (at least 1e-10).
double cross_commutation_tolerance(const OperatorTuple& x);

// X_{i,alpha}: product of the factor-i blocks along alpha (identity word -> I).
Mat word_product(const OperatorTuple& x, int i, const Word& alpha);
// X_alpha = X_{1,alpha_1} ... X_{k,alpha_k}.
Mat tuple_product(const OperatorTuple& x, const WordTuple& alpha);

// Phi(Y) = sum a_beta X_beta Y X_beta* for one factor's polynomial.
Mat phi_apply(const NcPolynomial& q, const std::vector<Mat>& xi, const Mat& y,
              Exec mode = default_exec());

// Composed defect with exponent profile p applied to the identity:
// the factor-k map acts first.
Mat defect(const PolyTuple& q, const OperatorTuple& x, const std::vector<int>& p,
           Exec mode = default_exec());

enum class MembershipMode { open, closed };
enum class MembershipVerdict { inside_open, on_or_inside_closed, outside };

struct MembershipReport {
  MembershipVerdict verdict = MembershipVerdict::outside;
  bool accepted = false;  // under the requested mode
  bool open_ok = false;   // full-defect margin > eps
  bool closed_ok = false; // all margins >= -eps
  std::vector<std::pair<std::vector<int>, double>> margins;  // all p in {0,1}^k
  double eps_used = 0.0;
  double defect_norm = 0.0;      // norm of the full defect on I
  double cross_residual = 0.0;
};

// Computes every defect margin (smallest eigenvalue of the Hermitian part of
// the defect on I) for p in {0,1}^k, ordered by binary counting with
// component 1 most significant.  eps_psd < 0 means the default
// 1e-10 * (1 + norm of the full defect).  Throws if cross-factor blocks fail
// to commute within tolerance.
MembershipReport membership(const PolyTuple& q, const OperatorTuple& x, MembershipMode mode,
                            double eps_psd = -1.0, Exec mode_exec = default_exec());

// Minkowski gauge: inf { r > 0 : X lies in the open domain scaled by r },
// by bracket doubling from 1 and bisection to tol.  Zero tuple -> 0.
double minkowski_functional(const PolyTuple& q, const OperatorTuple& x, double tol = 1e-10,
                            Exec mode = default_exec());

struct PurityReport {
  bool pure = false;
  double tol = 0.0;
  std::vector<std::vector<double>> traces;  // [factor][iterate] norm of Phi^m(I)
};

PurityReport is_pure(const PolyTuple& q, const OperatorTuple& x, int m_max = 50,
                     double tol = 1e-8, Exec mode = default_exec());

// Random tuple on a tensor product of per-factor spaces (blocks of different
// factors commute exactly); dim = product of factor_dims.
OperatorTuple random_tuple(const std::vector<int>& n, const std::vector<int>& factor_dims,
                           PortableRng& rng);
// Same, with strictly upper-triangular factor blocks (strictly nilpotent).
OperatorTuple random_nilpotent_tuple(const std::vector<int>& n, const std::vector<int>& factor_dims,
                                     PortableRng& rng);

bool strictly_upper_triangular(const OperatorTuple& x);

}  // namespace ncpolydom
