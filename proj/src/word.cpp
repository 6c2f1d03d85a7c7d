#include "ncpolydom/word.hpp"

#include <stdexcept>

namespace ncpolydom {

bool Word::valid_for(int n) const {
  for (int l : letters)
    if (l < 1 || l > n) return false;
  return true;
}

Word Word::concat(const Word& rhs) const {
  Word out;
  out.letters.reserve(letters.size() + rhs.letters.size());
  out.letters.insert(out.letters.end(), letters.begin(), letters.end());
  out.letters.insert(out.letters.end(), rhs.letters.begin(), rhs.letters.end());
  return out;
}

Word Word::prefix(int len) const {
  return Word(std::vector<int>(letters.begin(), letters.begin() + len));
}

Word Word::suffix(int start) const {
  return Word(std::vector<int>(letters.begin() + start, letters.end()));
}

std::string Word::str() const {
  if (letters.empty()) return "e";
  std::string s;
  for (int l : letters) s += "g" + std::to_string(l);
  return s;
}

std::uint64_t WordHash::operator()(const Word& w) const {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a over the letter stream
  for (int l : w.letters) {
    h ^= static_cast<std::uint64_t>(l);
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<int> WordTuple::profile() const {
  std::vector<int> p(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) p[i] = parts[i].length();
  return p;
}

int WordTuple::total_length() const {
  int t = 0;
  for (const Word& w : parts) t += w.length();
  return t;
}

bool WordTuple::is_identity() const {
  for (const Word& w : parts)
    if (!w.is_identity()) return false;
  return true;
}

std::string WordTuple::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += "|";
    s += parts[i].str();
  }
  return s + ")";
}

std::uint64_t WordTupleHash::operator()(const WordTuple& t) const {
  std::uint64_t h = 1469598103934665603ULL;
  WordHash wh;
  for (const Word& w : t.parts) {
    h ^= wh(w);
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<Word> enumerate_words(int n, int length) {
  if (n < 1) throw std::invalid_argument("alphabet size must be positive");
  if (length < 0) throw std::invalid_argument("word length must be nonnegative");
  std::vector<Word> out;
  if (length == 0) {
    out.push_back(Word::identity());
    return out;
  }
  std::vector<int> cur(length, 1);
  while (true) {
    out.push_back(Word(cur));
    int pos = length - 1;
    while (pos >= 0 && cur[pos] == n) cur[pos--] = 1;
    if (pos < 0) break;
    ++cur[pos];
  }
  return out;
}

std::vector<Word> enumerate_words_up_to(int n, int max_length) {
  std::vector<Word> out;
  for (int len = 0; len <= max_length; ++len) {
    auto level = enumerate_words(n, len);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::vector<std::vector<Word>> factorizations(const Word& w) {
  if (w.is_identity())
    throw std::invalid_argument("identity word has no factorization into nonempty blocks");
  const int L = w.length();
  std::vector<std::vector<Word>> out;
  out.reserve(std::size_t(1) << (L - 1));
  // Bit b of the mask cuts between positions b and b+1; mask 0 is the whole word.
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << (L - 1)); ++mask) {
    std::vector<Word> blocks;
    int start = 0;
    for (int pos = 0; pos + 1 < L; ++pos) {
      if (mask & (std::uint64_t(1) << pos)) {
        blocks.push_back(Word(std::vector<int>(w.letters.begin() + start, w.letters.begin() + pos + 1)));
        start = pos + 1;
      }
    }
    blocks.push_back(Word(std::vector<int>(w.letters.begin() + start, w.letters.end())));
    out.push_back(std::move(blocks));
  }
  return out;
}

static void compositions_rec(int m, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (k == 1) {
    cur.push_back(m);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int first = m; first >= 0; --first) {
    cur.push_back(first);
    compositions_rec(m - first, k - 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> compositions(int m, int k) {
  if (k < 1) throw std::invalid_argument("composition needs at least one part");
  if (m < 0) throw std::invalid_argument("composition total must be nonnegative");
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  compositions_rec(m, k, cur, out);
  return out;
}

std::vector<WordTuple> enumerate_lambda(const std::vector<int>& n, const std::vector<int>& p) {
  if (n.size() != p.size()) throw std::invalid_argument("alphabet and profile lengths differ");
  const int k = static_cast<int>(n.size());
  std::vector<std::vector<Word>> per(k);
  for (int i = 0; i < k; ++i) per[i] = enumerate_words(n[i], p[i]);
  std::vector<WordTuple> out;
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    std::vector<Word> parts(k);
    for (int i = 0; i < k; ++i) parts[i] = per[i][idx[i]];
    out.push_back(WordTuple(std::move(parts)));
    int pos = k - 1;
    while (pos >= 0 && ++idx[pos] == per[pos].size()) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

std::vector<WordTuple> enumerate_gamma(const std::vector<int>& n, int m) {
  std::vector<WordTuple> out;
  for (const auto& p : compositions(m, static_cast<int>(n.size()))) {
    auto level = enumerate_lambda(n, p);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::vector<WordTuple> enumerate_box(const std::vector<int>& n, const std::vector<int>& box) {
  if (n.size() != box.size()) throw std::invalid_argument("alphabet and box lengths differ");
  const int k = static_cast<int>(n.size());
  std::vector<std::vector<Word>> per(k);
  for (int i = 0; i < k; ++i) per[i] = enumerate_words_up_to(n[i], box[i]);
  std::vector<WordTuple> out;
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    std::vector<Word> parts(k);
    for (int i = 0; i < k; ++i) parts[i] = per[i][idx[i]];
    out.push_back(WordTuple(std::move(parts)));
    int pos = k - 1;
    while (pos >= 0 && ++idx[pos] == per[pos].size()) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

}  // namespace ncpolydom
