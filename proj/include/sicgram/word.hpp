#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sicgram/letter.hpp"

namespace sicgram {

inline bool is_reduced(std::span<const Letter> w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == w[i - 1].inverse()) return false;
  }
  return true;
}

// Reduced and no cancellation across the wrap-around either.
inline bool is_cyclically_reduced(std::span<const Letter> w) {
  if (w.size() < 2) return true;
  return is_reduced(w) && w.front() != w.back().inverse();
}

inline std::vector<Letter> free_reduce(std::span<const Letter> seq) {
  std::vector<Letter> stack;
  stack.reserve(seq.size());
  for (Letter l : seq) {
    if (!stack.empty() && stack.back() == l.inverse()) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return stack;
}

// Smallest period p of the linear word: w[i] == w[i % p] for all i.
// Computed from the KMP prefix function.
inline std::size_t smallest_period(std::span<const Letter> w) {
  const std::size_t n = w.size();
  if (n == 0) throw std::invalid_argument("smallest_period: empty word");
  std::vector<std::size_t> fail(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t j = fail[i - 1];
    while (j > 0 && w[i] != w[j]) j = fail[j - 1];
    if (w[i] == w[j]) ++j;
    fail[i] = j;
  }
  return n - fail[n - 1];
}

// A cyclic word is a proper power iff its smallest period divides the length
// strictly. Any rotation gives the same answer.
inline bool is_primitive_word(std::span<const Letter> w) {
  const std::size_t n = w.size();
  if (n == 0) throw std::invalid_argument("is_primitive: empty word");
  const std::size_t p = smallest_period(w);
  return !(p < n && n % p == 0);
}

// Booth's least-rotation algorithm, comparing letters by rank.
inline std::size_t booth_least_rotation(std::span<const Letter> w) {
  const std::size_t n = w.size();
  if (n < 2) return 0;
  auto at = [&](std::size_t i) { return w[i < n ? i : i - n].rank(); };
  std::vector<std::ptrdiff_t> f(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    const auto sj = at(j);
    std::ptrdiff_t i = f[j - k - 1];
    while (i != -1 && sj != at(k + static_cast<std::size_t>(i) + 1)) {
      if (sj < at(k + static_cast<std::size_t>(i) + 1))
        k = j - static_cast<std::size_t>(i) - 1;
      i = f[static_cast<std::size_t>(i)];
    }
    if (i == -1 && sj != at(k)) {
      if (sj < at(k)) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return k % n;
}

inline std::vector<Letter> rotated(std::span<const Letter> w, std::size_t k) {
  const std::size_t n = w.size();
  std::vector<Letter> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(w[(i + k) % n]);
  return out;
}

// A cyclically reduced word stored in its canonical (lexicographically least)
// rotation, together with its primitivity. The empty word represents the
// trivial class and counts as non-primitive.
class CyclicWord {
 public:
  CyclicWord() = default;

  explicit CyclicWord(std::span<const Letter> w) {
    if (!is_cyclically_reduced(w))
      throw std::invalid_argument("CyclicWord: input is not cyclically reduced");
    letters_ = rotated(w, booth_least_rotation(w));
    primitive_ = letters_.empty() ? false : is_primitive_word(letters_);
  }

  [[nodiscard]] std::span<const Letter> letters() const { return letters_; }
  [[nodiscard]] std::size_t length() const { return letters_.size(); }
  [[nodiscard]] bool empty() const { return letters_.empty(); }
  [[nodiscard]] bool primitive() const { return primitive_; }
  [[nodiscard]] std::string str() const { return format_word(letters_); }

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;

 private:
  std::vector<Letter> letters_;
  bool primitive_ = false;
};

// Canonical representative of a cyclically reduced sequence. Rejects input
// with cancellations.
inline CyclicWord canonical_rotation(std::span<const Letter> w) {
  return CyclicWord(w);
}

struct CyclicReduction {
  std::vector<Letter> conjugator;  // u with input = u . core . u^-1
  CyclicWord core;
};

// Strip conjugation from a reduced word. The conjugator absorbs both the
// stripped prefix and the rotation performed by canonicalization, so the
// group identity input = conjugator . core . conjugator^-1 holds exactly.
inline CyclicReduction cyclic_reduce(std::span<const Letter> w) {
  if (!is_reduced(w)) throw std::invalid_argument("cyclic_reduce: input not reduced");
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo] == w[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  const auto rest = w.subspan(lo, hi - lo);
  const std::size_t rot = booth_least_rotation(rest);
  std::vector<Letter> conj(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(lo));
  conj.insert(conj.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(rot));
  CyclicReduction out;
  out.conjugator = free_reduce(conj);
  out.core = CyclicWord(rest);
  return out;
}

inline CyclicWord inverse(const CyclicWord& w) {
  std::vector<Letter> inv;
  inv.reserve(w.length());
  const auto ls = w.letters();
  for (std::size_t i = ls.size(); i-- > 0;) inv.push_back(ls[i].inverse());
  return CyclicWord(inv);
}

inline bool is_primitive(const CyclicWord& w) {
  if (w.empty()) throw std::invalid_argument("is_primitive: empty word");
  return w.primitive();
}

// Primitive root u of a nonempty cyclic word w = u^k (u = w when primitive).
inline CyclicWord primitive_root(const CyclicWord& w) {
  if (w.empty()) throw std::invalid_argument("primitive_root: empty word");
  const std::size_t n = w.length();
  const std::size_t p = smallest_period(w.letters());
  if (p == n || n % p != 0) return w;
  return CyclicWord(w.letters().subspan(0, p));
}

}  // namespace sicgram
