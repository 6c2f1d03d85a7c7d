#include "ncpolydom/poly.hpp"

#include <stdexcept>

namespace ncpolydom {

NcPolynomial NcPolynomial::validate(int n, const std::map<Word, double>& candidate) {
  if (n < 1) throw std::invalid_argument("alphabet size must be positive");
  NcPolynomial q;
  q.n = n;
  for (const auto& [w, c] : candidate) {
    if (w.is_identity()) throw std::invalid_argument("constant term present");
    if (!w.valid_for(n)) throw std::invalid_argument("letter out of range at word " + w.str());
    if (!(c > 0.0)) throw std::invalid_argument("nonpositive coefficient at word " + w.str());
    q.terms[w] = c;
    if (w.length() > q.degree) q.degree = w.length();
  }
  for (int j = 1; j <= n; ++j) {
    if (!q.terms.count(Word({j})))
      throw std::invalid_argument("missing linear term g" + std::to_string(j));
  }
  return q;
}

NcPolynomial NcPolynomial::ball(int n) {
  std::map<Word, double> t;
  for (int j = 1; j <= n; ++j) t[Word({j})] = 1.0;
  return validate(n, t);
}

double NcPolynomial::coeff(const Word& w) const {
  auto it = terms.find(w);
  return it == terms.end() ? 0.0 : it->second;
}

std::vector<int> PolyTuple::alphabet_sizes() const {
  std::vector<int> n(polys.size());
  for (std::size_t i = 0; i < polys.size(); ++i) n[i] = polys[i].n;
  return n;
}

PolyTuple PolyTuple::ball(const std::vector<int>& n) {
  PolyTuple q;
  for (int ni : n) q.polys.push_back(NcPolynomial::ball(ni));
  return q;
}

BCoefficients::BCoefficients(NcPolynomial q) : q_(std::move(q)) {}

double BCoefficients::b(const Word& alpha) const {
  if (alpha.is_identity()) return 1.0;
  if (auto it = memo_.find(alpha); it != memo_.end()) return it->second;
  double acc = 0.0;
  const int dmax = std::min(q_.degree, alpha.length());
  for (int d = 1; d <= dmax; ++d) {
    const double a = q_.coeff(alpha.prefix(d));
    if (a != 0.0) acc += a * b(alpha.suffix(d));
  }
  memo_.emplace(alpha, acc);
  return acc;
}

double b_coefficient(const NcPolynomial& q, const Word& alpha) {
  return BCoefficients(q).b(alpha);
}

BProduct::BProduct(const PolyTuple& q) {
  facs_.reserve(q.polys.size());
  for (const auto& p : q.polys) facs_.emplace_back(p);
}

double BProduct::operator()(const WordTuple& t) const {
  if (t.k() != static_cast<int>(facs_.size()))
    throw std::invalid_argument("word tuple arity does not match polynomial tuple");
  double prod = 1.0;
  for (int i = 0; i < t.k(); ++i) prod *= facs_[i].b(t.parts[i]);
  return prod;
}

std::map<WordTuple, double> b_table(const PolyTuple& q, const std::vector<int>& box) {
  BProduct bp(q);
  std::map<WordTuple, double> out;
  for (const WordTuple& t : enumerate_box(q.alphabet_sizes(), box)) out[t] = bp(t);
  return out;
}

}  // namespace ncpolydom
