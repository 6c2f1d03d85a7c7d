#pragma once
// Positive regular polynomials in noncommuting indeterminates and the weight
// coefficients they induce.  A positive regular polynomial has strictly
// positive coefficients, zero constant term, and every linear term present.
//
// The weight coefficient of a word alpha is the sum over all ordered
// factorizations of alpha into nonempty blocks of the products of the
// polynomial's coefficients on the blocks (identity word: 1).  It is computed
// here by the prefix recursion
//   b(alpha) = sum over prefixes beta of alpha with 1 <= |beta| <= deg
//              of a(beta) * b(suffix),
// which agrees with the factorization sum.

#include <map>
#include <unordered_map>
#include <vector>

#include "ncpolydom/word.hpp"

namespace ncpolydom {

struct NcPolynomial {
  int n = 0;                    // alphabet size
  std::map<Word, double> terms; // word -> coefficient, all > 0, no identity key
  int degree = 0;

  // Validates positive regularity; throws std::invalid_argument naming the
  // violation ("constant term present", "nonpositive coefficient at ...",
  // "missing linear term ...", "letter out of range at ...").
  static NcPolynomial validate(int n, const std::map<Word, double>& candidate);

  // The ball polynomial: all linear coefficients 1, nothing else.
  static NcPolynomial ball(int n);

  double coeff(const Word& w) const;
};

struct PolyTuple {
  std::vector<NcPolynomial> polys;

  int k() const { return static_cast<int>(polys.size()); }
  std::vector<int> alphabet_sizes() const;

  static PolyTuple ball(const std::vector<int>& n);
};

// Memoizing evaluator of the weight coefficients of one polynomial.  Not
// internally synchronized: use one instance per thread, or precompute tables
// up front before parallel sections.
class BCoefficients {
 public:
  explicit BCoefficients(NcPolynomial q);
  const NcPolynomial& poly() const { return q_; }
  double b(const Word& alpha) const;

 private:
  NcPolynomial q_;
  mutable std::unordered_map<Word, double, WordHash> memo_;
};

// One-off weight coefficient (builds a fresh memo).
double b_coefficient(const NcPolynomial& q, const Word& alpha);

// Per-factor product weight for a word tuple.
class BProduct {
 public:
  explicit BProduct(const PolyTuple& q);
  double operator()(const WordTuple& t) const;
  const BCoefficients& factor(int i) const { return facs_[i]; }
  int k() const { return static_cast<int>(facs_.size()); }

 private:
  std::vector<BCoefficients> facs_;
};

// Weight table over the word box |alpha_i| <= box[i]; the identity tuple maps
// to 1.
std::map<WordTuple, double> b_table(const PolyTuple& q, const std::vector<int>& box);

}  // namespace ncpolydom
