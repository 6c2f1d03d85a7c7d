#include "ncpolydom/json_io.hpp"

#include <stdexcept>

namespace ncpolydom {

namespace {

[[noreturn]] void fail(const std::string& at, const std::string& what) {
  throw std::invalid_argument(at + ": " + what);
}

const json& member(const json& j, const char* key, const std::string& at) {
  if (!j.is_object()) fail(at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(at + "." + key, "missing field");
  return *it;
}

int int_field(const json& j, const std::string& at) {
  if (!j.is_number_integer()) fail(at, "expected an integer");
  return j.get<int>();
}

double num_field(const json& j, const std::string& at) {
  if (!j.is_number()) fail(at, "expected a number");
  return j.get<double>();
}

}  // namespace

json word_to_json(const Word& w) { return json(w.letters); }

Word word_from_json(const json& j, const std::string& at) {
  if (!j.is_array()) fail(at, "expected an array of letters");
  std::vector<int> letters;
  for (std::size_t i = 0; i < j.size(); ++i)
    letters.push_back(int_field(j[i], at + "[" + std::to_string(i) + "]"));
  return Word(std::move(letters));
}

json word_tuple_to_json(const WordTuple& t) {
  json out = json::array();
  for (const Word& w : t.parts) out.push_back(word_to_json(w));
  return out;
}

WordTuple word_tuple_from_json(const json& j, const std::string& at) {
  if (!j.is_array()) fail(at, "expected an array of words");
  std::vector<Word> parts;
  for (std::size_t i = 0; i < j.size(); ++i)
    parts.push_back(word_from_json(j[i], at + "[" + std::to_string(i) + "]"));
  return WordTuple(std::move(parts));
}

json poly_to_json(const NcPolynomial& q) {
  json terms = json::array();
  for (const auto& [w, c] : q.terms) terms.push_back({{"word", word_to_json(w)}, {"coeff", c}});
  return {{"n", q.n}, {"terms", terms}};
}

NcPolynomial poly_from_json(const json& j, const std::string& at) {
  int n = int_field(member(j, "n", at), at + ".n");
  const json& jt = member(j, "terms", at);
  if (!jt.is_array()) fail(at + ".terms", "expected an array");
  std::map<Word, double> terms;
  for (std::size_t i = 0; i < jt.size(); ++i) {
    std::string here = at + ".terms[" + std::to_string(i) + "]";
    Word w = word_from_json(member(jt[i], "word", here), here + ".word");
    double c = num_field(member(jt[i], "coeff", here), here + ".coeff");
    if (terms.count(w)) fail(here + ".word", "duplicate word");
    terms[w] = c;
  }
  try {
    return NcPolynomial::validate(n, terms);
  } catch (const std::invalid_argument& e) {
    fail(at, e.what());
  }
}

json poly_tuple_to_json(const PolyTuple& q) {
  json out = json::array();
  for (const auto& p : q.polys) out.push_back(poly_to_json(p));
  return out;
}

PolyTuple poly_tuple_from_json(const json& j, const std::string& at) {
  PolyTuple q;
  if (j.is_object()) {
    q.polys.push_back(poly_from_json(j, at));
    return q;
  }
  if (!j.is_array() || j.empty()) fail(at, "expected a nonempty array of polynomials");
  for (std::size_t i = 0; i < j.size(); ++i)
    q.polys.push_back(poly_from_json(j[i], at + "[" + std::to_string(i) + "]"));
  return q;
}

json complex_to_json(cd v) { return json::array({v.real(), v.imag()}); }

cd complex_from_json(const json& j, const std::string& at) {
  if (!j.is_array() || j.size() != 2) fail(at, "expected an [re, im] pair");
  return cd(num_field(j[0], at + "[0]"), num_field(j[1], at + "[1]"));
}

static json mat_entries(const Mat& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(complex_to_json(m(r, c)));
  return out;
}

static Mat mat_from_entries(const json& j, int rows, int cols, const std::string& at) {
  if (!j.is_array()) fail(at, "expected an array of [re, im] pairs");
  if (static_cast<int>(j.size()) != rows * cols)
    fail(at, "expected " + std::to_string(rows * cols) + " entries, got " + std::to_string(j.size()));
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      m(r, c) = complex_from_json(j[r * cols + c], at + "[" + std::to_string(r * cols + c) + "]");
  return m;
}

json operator_tuple_to_json(const OperatorTuple& x) {
  json blocks = json::array();
  for (const auto& row : x.blocks) {
    json jrow = json::array();
    for (const Mat& b : row) jrow.push_back(mat_entries(b));
    blocks.push_back(jrow);
  }
  return {{"dim", x.dim}, {"blocks", blocks}};
}

OperatorTuple operator_tuple_from_json(const json& j, const std::string& at) {
  OperatorTuple x;
  x.dim = int_field(member(j, "dim", at), at + ".dim");
  if (x.dim < 1) fail(at + ".dim", "dimension must be positive");
  const json& jb = member(j, "blocks", at);
  if (!jb.is_array() || jb.empty()) fail(at + ".blocks", "expected a nonempty array of factors");
  for (std::size_t i = 0; i < jb.size(); ++i) {
    std::string here = at + ".blocks[" + std::to_string(i) + "]";
    if (!jb[i].is_array() || jb[i].empty()) fail(here, "expected a nonempty array of matrices");
    std::vector<Mat> row;
    for (std::size_t l = 0; l < jb[i].size(); ++l)
      row.push_back(mat_from_entries(jb[i][l], x.dim, x.dim, here + "[" + std::to_string(l) + "]"));
    x.blocks.push_back(std::move(row));
  }
  return x;
}

json series_to_json(const FormalSeries& f) {
  json terms = json::array();
  for (const auto& [t, a] : f.terms)
    terms.push_back({{"words", word_tuple_to_json(t)}, {"block", mat_entries(a)}});
  return {{"k", f.k()}, {"n", f.n}, {"coeff_dim", f.coeff_dim}, {"terms", terms}};
}

FormalSeries series_from_json(const json& j, const std::string& at) {
  int k = int_field(member(j, "k", at), at + ".k");
  const json& jn = member(j, "n", at);
  if (!jn.is_array() || static_cast<int>(jn.size()) != k)
    fail(at + ".n", "expected an array of " + std::to_string(k) + " alphabet sizes");
  std::vector<int> n;
  for (std::size_t i = 0; i < jn.size(); ++i)
    n.push_back(int_field(jn[i], at + ".n[" + std::to_string(i) + "]"));
  int dk = int_field(member(j, "coeff_dim", at), at + ".coeff_dim");
  FormalSeries f;
  try {
    f = FormalSeries::make(n, dk);
  } catch (const std::invalid_argument& e) {
    fail(at, e.what());
  }
  const json& jt = member(j, "terms", at);
  if (!jt.is_array()) fail(at + ".terms", "expected an array");
  for (std::size_t i = 0; i < jt.size(); ++i) {
    std::string here = at + ".terms[" + std::to_string(i) + "]";
    WordTuple t = word_tuple_from_json(member(jt[i], "words", here), here + ".words");
    Mat block = mat_from_entries(member(jt[i], "block", here), dk, dk, here + ".block");
    if (f.terms.count(t)) fail(here + ".words", "duplicate word tuple");
    try {
      f.set(t, std::move(block));
    } catch (const std::invalid_argument& e) {
      fail(here, e.what());
    }
  }
  return f;
}

json matrix_dense_json(const Mat& m) { return {{"dim", m.rows()}, {"entries", mat_entries(m)}}; }

json matrix_rect_json(const Mat& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", mat_entries(m)}};
}

json sparse_triplets_json(const SpMat& m) {
  json trips = json::array();
  for (int outer = 0; outer < m.outerSize(); ++outer)
    for (SpMat::InnerIterator it(m, outer); it; ++it)
      trips.push_back(json::array(
          {static_cast<long>(it.row()), static_cast<long>(it.col()), it.value().real(), it.value().imag()}));
  return {{"dim", static_cast<long>(m.rows())}, {"triplets", trips}};
}

WordPairExpr word_pair_expr_from_json(const json& j, int k, const std::string& at) {
  const json& jt = member(j, "terms", at);
  if (!jt.is_array()) fail(at + ".terms", "expected an array");
  WordPairExpr expr;
  for (std::size_t i = 0; i < jt.size(); ++i) {
    std::string here = at + ".terms[" + std::to_string(i) + "]";
    WordPairTerm term;
    term.alpha = word_tuple_from_json(member(jt[i], "alpha", here), here + ".alpha");
    term.beta = word_tuple_from_json(member(jt[i], "beta", here), here + ".beta");
    if (term.alpha.k() != k || term.beta.k() != k) fail(here, "word tuple arity mismatch");
    term.c = jt[i].contains("c") ? complex_from_json(jt[i]["c"], here + ".c") : cd(1.0, 0.0);
    expr.push_back(std::move(term));
  }
  return expr;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = digits[h & 0xf];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf);
}

}  // namespace ncpolydom
