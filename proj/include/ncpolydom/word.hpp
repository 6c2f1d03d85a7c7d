#pragma once
// Words over a finite alphabet of noncommuting generators, and tuples of such
// words (one word per factor of a product alphabet).  Letters are 1-based.
// Words are ordered graded-lexicographically: first by length, then by the
// numeric order of the letter sequences.  Word tuples are ordered
// lexicographically component by component, with component 1 most significant.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace ncpolydom {

struct Word {
  std::vector<int> letters;  // entries in [1, n]

  Word() = default;
  explicit Word(std::vector<int> ls) : letters(std::move(ls)) {}

  static Word identity() { return Word{}; }

  int length() const { return static_cast<int>(letters.size()); }
  bool is_identity() const { return letters.empty(); }
  bool valid_for(int n) const;

  Word concat(const Word& rhs) const;
  Word prefix(int len) const;    // first len letters
  Word suffix(int start) const;  // letters from position start (0-based) on

  bool operator==(const Word& rhs) const { return letters == rhs.letters; }
  std::strong_ordering operator<=>(const Word& rhs) const {
    if (auto c = letters.size() <=> rhs.letters.size(); c != 0) return c;
    return letters <=> rhs.letters;
  }

  std::string str() const;  // e.g. "g1g2g1", identity prints "e"
};

struct WordHash {
  std::uint64_t operator()(const Word& w) const;
};

struct WordTuple {
  std::vector<Word> parts;  // one word per factor

  WordTuple() = default;
  explicit WordTuple(std::vector<Word> ps) : parts(std::move(ps)) {}

  static WordTuple identity(int k) { return WordTuple(std::vector<Word>(k)); }

  int k() const { return static_cast<int>(parts.size()); }
  std::vector<int> profile() const;  // per-component lengths
  int total_length() const;
  bool is_identity() const;

  bool operator==(const WordTuple& rhs) const { return parts == rhs.parts; }
  std::strong_ordering operator<=>(const WordTuple& rhs) const {
    const std::size_t m = parts.size() < rhs.parts.size() ? parts.size() : rhs.parts.size();
    for (std::size_t i = 0; i < m; ++i)
      if (auto c = parts[i] <=> rhs.parts[i]; c != 0) return c;
    return parts.size() <=> rhs.parts.size();
  }

  std::string str() const;  // e.g. "(g1g2|e)"
};

struct WordTupleHash {
  std::uint64_t operator()(const WordTuple& t) const;
};

// All words of exactly the given length over n letters, in graded-lex order
// (for fixed length this is plain lexicographic order).
std::vector<Word> enumerate_words(int n, int length);

// All words of length <= max_length over n letters, in graded-lex order.
std::vector<Word> enumerate_words_up_to(int n, int max_length);

// All ordered factorizations of w into nonempty blocks: for |w| = L there are
// exactly 2^(L-1), enumerated with the undivided word first.  Throws
// std::invalid_argument for the identity word.
std::vector<std::vector<Word>> factorizations(const Word& w);

// All compositions of m into k nonnegative parts, first part decreasing.
std::vector<std::vector<int>> compositions(int m, int k);

// Word tuples with exact per-component lengths p over alphabets n (component 1
// varies slowest).
std::vector<WordTuple> enumerate_lambda(const std::vector<int>& n, const std::vector<int>& p);

// Word tuples of total length m over alphabets n, grouped by composition in
// compositions(m, k) order.
std::vector<WordTuple> enumerate_gamma(const std::vector<int>& n, int m);

// Word tuples within a per-component length box: |part_i| <= box[i].
std::vector<WordTuple> enumerate_box(const std::vector<int>& n, const std::vector<int>& box);

}  // namespace ncpolydom
