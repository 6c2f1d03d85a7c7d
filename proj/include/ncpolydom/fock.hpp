#pragma once
// Truncated weighted tensor model.  Each factor carries the weighted full Fock
// space over its alphabet truncated at a degree cap, with weighted left
// creation operators
//   W_j e_alpha = sqrt(b_alpha / b_{g_j alpha}) e_{g_j alpha},
// where b are the weight coefficients of that factor's polynomial.  The
// ambient space is the tensor product of the factors; ambient operators act on
// one factor and leave the others alone.  Truncation annihilates overflow (the
// top-degree column is zero), which makes degree-preserving expressions exact
// and truncated operators exact compressions of their untruncated versions.

#include <vector>

#include "ncpolydom/linalg.hpp"
#include "ncpolydom/parallel.hpp"
#include "ncpolydom/poly.hpp"

namespace ncpolydom {

// Per-factor degree caps: 4 for alphabets of size <= 2, else 3.
std::vector<int> default_caps(const PolyTuple& q);

// Single-factor weighted creation operator on the span of words of length
// <= cap, in graded-lex basis order.  Column alpha maps to g_j alpha, columns
// of top length map to zero.
SpMat creation_operator(const NcPolynomial& q, int j, int cap);

struct SparseEntry {
  long row = 0, col = 0;
  double weight = 0.0;
};

class TensorModel {
 public:
  TensorModel(PolyTuple q, std::vector<int> caps);

  const PolyTuple& q() const { return q_; }
  const std::vector<int>& caps() const { return caps_; }
  int k() const { return q_.k(); }
  long dim() const { return dim_; }

  int factor_dim(int i) const { return static_cast<int>(factors_[i].words.size()); }
  const std::vector<Word>& factor_words(int i) const { return factors_[i].words; }
  double factor_b(int i, int word_index) const { return factors_[i].b[word_index]; }
  int factor_word_index(int i, const Word& w) const;  // -1 if outside the cap

  long index_of(const WordTuple& t) const;  // -1 if outside the caps
  WordTuple tuple_at(long index) const;
  double b_product_at(long index) const;

  // Ambient creation operator for letter j of factor i (0-based factor, 1-based letter).
  SpMat ambient(int i, int j) const;

  // Product operator of a word tuple: column t maps to the tuple obtained by
  // prepending part i of alpha to part i of t, annihilated on cap overflow.
  // Every column has at most one entry, with positive weight.
  std::vector<SparseEntry> word_op_entries(const WordTuple& alpha) const;
  SpMat word_op(const WordTuple& alpha) const;

  // Action of the factor-i completely positive map Y -> sum a_beta W_beta Y W_beta*
  // on diagonal operators (the tensor basis diagonal is invariant under it).
  RVec phi_diag(int i, const RVec& ydiag, Exec mode = default_exec()) const;

  // Diagonal of the composed defect applied to the identity, with exponent
  // profile p (entries >= 0).
  RVec defect_diag(const std::vector<int>& p, Exec mode = default_exec()) const;

  // Diagonal of the full defect (all exponents 1); equals the vacuum
  // projection exactly up to round-off.
  RVec universal_defect_diag(Exec mode = default_exec()) const;

 private:
  struct Factor {
    int n = 0, cap = 0;
    std::vector<Word> words;                               // graded-lex, lengths <= cap
    std::unordered_map<Word, int, WordHash> index;
    std::vector<double> b;
    // Per word u: (v, a_prefix * b[v] / b[u]) over admissible prefix splits.
    std::vector<std::vector<std::pair<int, double>>> phi_splits;
  };

  PolyTuple q_;
  std::vector<int> caps_;
  std::vector<Factor> factors_;
  std::vector<long> strides_;  // factor 1 slowest
  long dim_ = 0;
  std::vector<std::vector<int>> digit_;  // [factor][tensor index] -> factor word index
};

// Sparse diagonal matrix from a diagonal vector.
SpMat diagonal_sparse(const RVec& d);

}  // namespace ncpolydom
