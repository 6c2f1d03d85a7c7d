#include "ncpolydom/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace ncpolydom {

std::vector<int> default_caps(const PolyTuple& q) {
  std::vector<int> caps(q.k());
  for (int i = 0; i < q.k(); ++i) caps[i] = q.polys[i].n <= 2 ? 4 : 3;
  return caps;
}

SpMat creation_operator(const NcPolynomial& q, int j, int cap) {
  if (j < 1 || j > q.n) throw std::invalid_argument("letter index out of range");
  if (cap < 0) throw std::invalid_argument("cap must be nonnegative");
  BCoefficients bc(q);
  auto words = enumerate_words_up_to(q.n, cap);
  std::unordered_map<Word, int, WordHash> index;
  for (std::size_t u = 0; u < words.size(); ++u) index[words[u]] = static_cast<int>(u);
  std::vector<Eigen::Triplet<cd>> trips;
  for (std::size_t u = 0; u < words.size(); ++u) {
    if (words[u].length() + 1 > cap) continue;  // top column annihilated
    Word raised = Word({j}).concat(words[u]);
    int v = index.at(raised);
    double w = std::sqrt(bc.b(words[u]) / bc.b(raised));
    trips.emplace_back(v, static_cast<int>(u), cd(w, 0.0));
  }
  SpMat m(static_cast<int>(words.size()), static_cast<int>(words.size()));
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

TensorModel::TensorModel(PolyTuple q, std::vector<int> caps) : q_(std::move(q)), caps_(std::move(caps)) {
  if (static_cast<int>(caps_.size()) != q_.k())
    throw std::invalid_argument("caps arity does not match polynomial tuple");
  const int k = q_.k();
  factors_.resize(k);
  for (int i = 0; i < k; ++i) {
    if (caps_[i] < 0) throw std::invalid_argument("cap must be nonnegative");
    Factor& f = factors_[i];
    f.n = q_.polys[i].n;
    f.cap = caps_[i];
    f.words = enumerate_words_up_to(f.n, f.cap);
    for (std::size_t u = 0; u < f.words.size(); ++u) f.index[f.words[u]] = static_cast<int>(u);
    BCoefficients bc(q_.polys[i]);
    f.b.resize(f.words.size());
    for (std::size_t u = 0; u < f.words.size(); ++u) f.b[u] = bc.b(f.words[u]);
    f.phi_splits.resize(f.words.size());
    for (std::size_t u = 0; u < f.words.size(); ++u) {
      const Word& w = f.words[u];
      const int dmax = std::min(q_.polys[i].degree, w.length());
      for (int d = 1; d <= dmax; ++d) {
        double a = q_.polys[i].coeff(w.prefix(d));
        if (a == 0.0) continue;
        int v = f.index.at(w.suffix(d));
        f.phi_splits[u].emplace_back(v, a * f.b[v] / f.b[u]);
      }
    }
  }
  strides_.assign(k, 1);
  dim_ = 1;
  for (int i = k - 1; i >= 0; --i) {
    strides_[i] = dim_;
    dim_ *= static_cast<long>(factors_[i].words.size());
  }
  digit_.assign(k, std::vector<int>(dim_));
  for (long t = 0; t < dim_; ++t) {
    long rem = t;
    for (int i = 0; i < k; ++i) {
      digit_[i][t] = static_cast<int>(rem / strides_[i]);
      rem %= strides_[i];
    }
  }
}

int TensorModel::factor_word_index(int i, const Word& w) const {
  auto it = factors_[i].index.find(w);
  return it == factors_[i].index.end() ? -1 : it->second;
}

long TensorModel::index_of(const WordTuple& t) const {
  if (t.k() != k()) throw std::invalid_argument("word tuple arity does not match model");
  long idx = 0;
  for (int i = 0; i < k(); ++i) {
    int u = factor_word_index(i, t.parts[i]);
    if (u < 0) return -1;
    idx += strides_[i] * u;
  }
  return idx;
}

WordTuple TensorModel::tuple_at(long index) const {
  std::vector<Word> parts(k());
  for (int i = 0; i < k(); ++i) parts[i] = factors_[i].words[digit_[i][index]];
  return WordTuple(std::move(parts));
}

double TensorModel::b_product_at(long index) const {
  double prod = 1.0;
  for (int i = 0; i < k(); ++i) prod *= factors_[i].b[digit_[i][index]];
  return prod;
}

SpMat TensorModel::ambient(int i, int j) const {
  if (i < 0 || i >= k()) throw std::invalid_argument("factor index out of range");
  if (j < 1 || j > factors_[i].n) throw std::invalid_argument("letter index out of range");
  std::vector<Eigen::Triplet<cd>> trips;
  const Factor& f = factors_[i];
  for (long t = 0; t < dim_; ++t) {
    int u = digit_[i][t];
    if (f.words[u].length() + 1 > f.cap) continue;
    int v = f.index.at(Word({j}).concat(f.words[u]));
    double w = std::sqrt(f.b[u] / f.b[v]);
    trips.emplace_back(static_cast<int>(t + (v - u) * strides_[i]), static_cast<int>(t), cd(w, 0.0));
  }
  SpMat m(dim_, dim_);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

std::vector<SparseEntry> TensorModel::word_op_entries(const WordTuple& alpha) const {
  if (alpha.k() != k()) throw std::invalid_argument("word tuple arity does not match model");
  for (int i = 0; i < k(); ++i)
    if (!alpha.parts[i].valid_for(factors_[i].n)) throw std::invalid_argument("letter out of range in word tuple");
  std::vector<SparseEntry> out;
  out.reserve(dim_);
  for (long t = 0; t < dim_; ++t) {
    long row = t;
    double w = 1.0;
    bool alive = true;
    for (int i = 0; i < k(); ++i) {
      if (alpha.parts[i].is_identity()) continue;
      const Factor& f = factors_[i];
      int u = digit_[i][t];
      Word raised = alpha.parts[i].concat(f.words[u]);
      if (raised.length() > f.cap) {
        alive = false;
        break;
      }
      int v = f.index.at(raised);
      w *= std::sqrt(f.b[u] / f.b[v]);
      row += (v - u) * strides_[i];
    }
    if (alive) out.push_back({row, t, w});
  }
  return out;
}

SpMat TensorModel::word_op(const WordTuple& alpha) const {
  std::vector<Eigen::Triplet<cd>> trips;
  for (const SparseEntry& e : word_op_entries(alpha))
    trips.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col), cd(e.weight, 0.0));
  SpMat m(dim_, dim_);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

RVec TensorModel::phi_diag(int i, const RVec& ydiag, Exec mode) const {
  if (i < 0 || i >= k()) throw std::invalid_argument("factor index out of range");
  if (ydiag.size() != dim_) throw std::invalid_argument("diagonal length does not match model");
  RVec out(dim_);
  const Factor& f = factors_[i];
  const long stride = strides_[i];
  for_indexed(mode, dim_, [&](long t) {
    double acc = 0.0;
    int u = digit_[i][t];
    for (const auto& [v, c] : f.phi_splits[u]) acc += c * ydiag[t + (v - u) * stride];
    out[t] = acc;
  });
  return out;
}

RVec TensorModel::defect_diag(const std::vector<int>& p, Exec mode) const {
  if (static_cast<int>(p.size()) != k())
    throw std::invalid_argument("exponent profile arity does not match model");
  RVec y = RVec::Ones(dim_);
  for (int i = k() - 1; i >= 0; --i) {
    if (p[i] < 0) throw std::invalid_argument("exponent must be nonnegative");
    for (int rep = 0; rep < p[i]; ++rep) y -= phi_diag(i, y, mode);
  }
  return y;
}

RVec TensorModel::universal_defect_diag(Exec mode) const {
  return defect_diag(std::vector<int>(k(), 1), mode);
}

SpMat diagonal_sparse(const RVec& d) {
  std::vector<Eigen::Triplet<cd>> trips;
  for (Eigen::Index i = 0; i < d.size(); ++i)
    if (d[i] != 0.0) trips.emplace_back(static_cast<int>(i), static_cast<int>(i), cd(d[i], 0.0));
  SpMat m(d.size(), d.size());
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

}  // namespace ncpolydom
