#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "divalg/error.hpp"

namespace divalg {

// A word over the free monoid on letters x1..xm.  Letters are stored as
// 1-based indices; the empty word is allowed.  Text form: "x1 x2 x1" with the
// spaces optional; the empty word reads and prints as "eps".
struct Word {
  int alphabet = 0;
  std::vector<int> letters;

  static Word empty(int m);
  static Word of(int m, const std::vector<int>& letters);
  static Word parse(int m, std::string_view text);

  int length() const { return static_cast<int>(letters.size()); }
  bool is_empty() const { return letters.empty(); }
  // Factor of `len` letters starting at `pos` (0-based).
  Word sub(int pos, int len) const;
  Word operator+(const Word& o) const;
  bool operator==(const Word& o) const = default;
  std::string str() const;
};

// Degree-lexicographic comparison: shorter words come first; words of equal
// length compare letterwise with x1 the greatest letter.
// Throws AlphabetMismatch when the words use different alphabets.
std::strong_ordering deglex_cmp(const Word& u, const Word& v);

// w = v1 * u^d * v2 with u nonempty.
struct PowerSplit {
  Word v1, u, v2;
  int d = 0;
};

// w = v1 * u_1 ... u_d * v2 where the concatenation u_1...u_d strictly
// dominates every nontrivial permutation of the parts in degree-lex order,
// and (d-1) * len(u_i) < len(u_1...u_d) for every part.
struct ShirshovSplit {
  Word v1;
  std::vector<Word> parts;
  Word v2;
};

struct BellDecomposition {
  enum class Kind { Power, Shirshov };
  Kind kind = Kind::Power;
  std::optional<PowerSplit> power;
  std::optional<ShirshovSplit> shirshov;
};

// Leftmost occurrence of a d-th power factor, shortest base first at equal
// positions: scans start positions ascending, then periods ascending.
std::optional<PowerSplit> power_factorization(const Word& w, int d);

// Exhaustive search over splits in canonical order — v1 length ascending,
// then v2 length ascending, then the interior part-length vector in
// lexicographic order — returning the first split whose parts pass the
// dominance and length conditions.
std::optional<ShirshovSplit> shirshov_split(const Word& w, int d);

// Tries the power form first, then the dominance form.
std::optional<BellDecomposition> bell_decompose(const Word& w, int d);

// Smallest n such that every word of length in (n, max_len] decomposes,
// found by enumerating the whole monoid up to max_len.  Returns nullopt when
// some word of length max_len itself fails (nothing longer is examined, so no
// bound can be certified).  Desk-scale guard: m <= 3, max_len <= 14.
std::optional<int> estimate_bound_n(int m, int d, int max_len);

// Term lists of the substitution identity expressing the product u_1...u_d
// through d-th powers of subset sums u_T and the other orderings:
//
//   u_1 u_2 ... u_d  =  sum over nonempty T of (-1)^(d-|T|) * u_T^d
//                       - sum over nonidentity permutations of u_s(1)...u_s(d)
//
// Subsets are listed by ascending bitmask with 1-based sorted members;
// permutations in lexicographic order.
struct PolarizationTerms {
  std::vector<std::pair<std::vector<int>, int>> subsets;  // (members of T, sign)
  std::vector<std::vector<int>> permutations;             // nontrivial orderings
};
PolarizationTerms polarization_terms(int d);

}  // namespace divalg
