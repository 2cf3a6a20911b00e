#include "divalg/words.hpp"

#include <algorithm>
#include <numeric>

namespace divalg {

namespace {

void require_alphabet(int m) {
  if (m < 1 || m > 9) fail(Err::ValidationError, "alphabet size must be between 1 and 9");
}

void require_same_alphabet(const Word& u, const Word& v) {
  if (u.alphabet != v.alphabet)
    fail(Err::AlphabetMismatch, "words over alphabets of size " + std::to_string(u.alphabet) +
                                    " and " + std::to_string(v.alphabet));
}

void require_multiplicity(int d) {
  if (d < 2) fail(Err::ValidationError, "decompositions need d >= 2");
}

}  // namespace

Word Word::empty(int m) {
  require_alphabet(m);
  Word w;
  w.alphabet = m;
  return w;
}

Word Word::of(int m, const std::vector<int>& letters) {
  require_alphabet(m);
  for (int x : letters)
    if (x < 1 || x > m)
      fail(Err::ValidationError,
           "letter x" + std::to_string(x) + " outside the alphabet x1..x" + std::to_string(m));
  Word w;
  w.alphabet = m;
  w.letters = letters;
  return w;
}

Word Word::parse(int m, std::string_view text) {
  require_alphabet(m);
  std::vector<int> letters;
  std::size_t i = 0;
  auto skip_spaces = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_spaces();
  if (i == text.size()) fail(Err::SyntaxError, "empty word text; write \"eps\"");
  if (text.compare(i, 3, "eps") == 0) {
    i += 3;
    skip_spaces();
    if (i != text.size()) fail(Err::SyntaxError, "trailing input after the empty word");
    return empty(m);
  }
  while (i < text.size()) {
    if (text[i] != 'x')
      fail(Err::SyntaxError, std::string("expected a letter 'x<digit>' at \"") +
                                 std::string(text.substr(i)) + "\"");
    ++i;
    if (i >= text.size() || text[i] < '1' || text[i] > '9')
      fail(Err::SyntaxError, "letter index must be a digit 1-9");
    letters.push_back(text[i] - '0');
    ++i;
    skip_spaces();
  }
  return of(m, letters);
}

Word Word::sub(int pos, int len) const {
  Word w;
  w.alphabet = alphabet;
  w.letters.assign(letters.begin() + pos, letters.begin() + pos + len);
  return w;
}

Word Word::operator+(const Word& o) const {
  require_same_alphabet(*this, o);
  Word w = *this;
  w.letters.insert(w.letters.end(), o.letters.begin(), o.letters.end());
  return w;
}

std::string Word::str() const {
  if (letters.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) out += ' ';
    out += 'x';
    out += static_cast<char>('0' + letters[i]);
  }
  return out;
}

std::strong_ordering deglex_cmp(const Word& u, const Word& v) {
  require_same_alphabet(u, v);
  if (u.length() != v.length()) return u.length() <=> v.length();
  for (std::size_t i = 0; i < u.letters.size(); ++i) {
    if (u.letters[i] != v.letters[i])
      // x1 is the greatest letter, so a smaller index means a greater word.
      return v.letters[i] <=> u.letters[i];
  }
  return std::strong_ordering::equal;
}

std::optional<PowerSplit> power_factorization(const Word& w, int d) {
  require_multiplicity(d);
  const int n = w.length();
  for (int start = 0; start < n; ++start) {
    for (int period = 1; start + d * period <= n; ++period) {
      bool match = true;
      for (int i = period; i < d * period && match; ++i)
        match = w.letters[static_cast<std::size_t>(start + i)] ==
                w.letters[static_cast<std::size_t>(start + i - period)];
      if (!match) continue;
      PowerSplit out;
      out.v1 = w.sub(0, start);
      out.u = w.sub(start, period);
      out.v2 = w.sub(start + d * period, n - start - d * period);
      out.d = d;
      return out;
    }
  }
  return std::nullopt;
}

namespace {

bool dominates_all_permutations(const std::vector<Word>& parts, const Word& whole) {
  std::vector<int> order(parts.size());
  std::iota(order.begin(), order.end(), 0);
  while (std::next_permutation(order.begin(), order.end())) {
    Word permuted = Word::empty(whole.alphabet);
    for (int idx : order) permuted = permuted + parts[static_cast<std::size_t>(idx)];
    if (deglex_cmp(whole, permuted) != std::strong_ordering::greater) return false;
  }
  return true;
}

}  // namespace

std::optional<ShirshovSplit> shirshov_split(const Word& w, int d) {
  require_multiplicity(d);
  const int n = w.length();
  std::vector<int> cuts(static_cast<std::size_t>(d), 1);
  for (int left = 0; left + d <= n; ++left) {
    for (int right = 0; right <= n - d - left; ++right) {
      const int block_len = n - left - right;
      const Word block = w.sub(left, block_len);
      // Part lengths sum to block_len, each at least one, visited in
      // lexicographic order.
      std::fill(cuts.begin(), cuts.end(), 1);
      cuts.back() = block_len - (d - 1);
      for (;;) {
        std::vector<Word> parts;
        int pos = left;
        for (int i = 0; i < d; ++i) {
          parts.push_back(w.sub(pos, cuts[static_cast<std::size_t>(i)]));
          pos += cuts[static_cast<std::size_t>(i)];
        }
        bool lengths_fine = true;
        for (const Word& part : parts)
          if ((d - 1) * part.length() >= block_len) lengths_fine = false;
        if (lengths_fine && dominates_all_permutations(parts, block)) {
          ShirshovSplit out;
          out.v1 = w.sub(0, left);
          out.parts = std::move(parts);
          out.v2 = w.sub(n - right, right);
          return out;
        }
        // Advance the length vector: increment the rightmost slack position.
        int i = d - 2;
        while (i >= 0) {
          int tail = 0;
          for (int j = i + 1; j < d; ++j) tail += cuts[static_cast<std::size_t>(j)];
          if (tail > d - 1 - i) break;  // room to grow cuts[i]
          --i;
        }
        if (i < 0) break;
        ++cuts[static_cast<std::size_t>(i)];
        int used = 0;
        for (int j = 0; j <= i; ++j) used += cuts[static_cast<std::size_t>(j)];
        for (int j = i + 1; j < d; ++j) cuts[static_cast<std::size_t>(j)] = 1;
        cuts[static_cast<std::size_t>(d) - 1] = block_len - used - (d - 2 - i);
      }
    }
  }
  return std::nullopt;
}

std::optional<BellDecomposition> bell_decompose(const Word& w, int d) {
  require_multiplicity(d);
  if (auto p = power_factorization(w, d)) {
    BellDecomposition out;
    out.kind = BellDecomposition::Kind::Power;
    out.power = std::move(*p);
    return out;
  }
  if (auto s = shirshov_split(w, d)) {
    BellDecomposition out;
    out.kind = BellDecomposition::Kind::Shirshov;
    out.shirshov = std::move(*s);
    return out;
  }
  return std::nullopt;
}

std::optional<int> estimate_bound_n(int m, int d, int max_len) {
  require_alphabet(m);
  require_multiplicity(d);
  if (m > 3 || max_len > 14 || max_len < 1)
    fail(Err::ValidationError, "bound search is limited to m <= 3 and max_len in [1, 14]");
  int worst_failing = 0;
  for (int len = 1; len <= max_len; ++len) {
    long long count = 1;
    for (int i = 0; i < len; ++i) count *= m;
    bool all_decompose = true;
    std::vector<int> letters(static_cast<std::size_t>(len), 1);
    for (long long e = 0; e < count; ++e) {
      long long rest = e;
      for (int i = len - 1; i >= 0; --i) {
        letters[static_cast<std::size_t>(i)] = static_cast<int>(rest % m) + 1;
        rest /= m;
      }
      if (!bell_decompose(Word::of(m, letters), d).has_value()) {
        all_decompose = false;
        break;
      }
    }
    if (!all_decompose) worst_failing = len;
  }
  if (worst_failing == max_len) return std::nullopt;
  return worst_failing;
}

PolarizationTerms polarization_terms(int d) {
  if (d < 1) fail(Err::ValidationError, "the identity needs d >= 1");
  PolarizationTerms out;
  for (unsigned mask = 1; mask < (1u << d); ++mask) {
    std::vector<int> members;
    for (int i = 0; i < d; ++i)
      if (mask & (1u << i)) members.push_back(i + 1);
    const int sign = ((d - static_cast<int>(members.size())) % 2 == 0) ? 1 : -1;
    out.subsets.emplace_back(std::move(members), sign);
  }
  std::vector<int> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 1);
  while (std::next_permutation(order.begin(), order.end())) out.permutations.push_back(order);
  return out;
}

}  // namespace divalg
