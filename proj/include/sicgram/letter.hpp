#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sicgram {

// Letters of the rank-2 free group, as 2-bit codes: a=0, a^-1=1, b=2, b^-1=3.
// Inversion is a low-bit flip. Ordering goes through rank(), which realizes
// the fixed letter order a < b < a^-1 < b^-1 used everywhere (canonical
// rotation, enumeration, shard keys).
struct Letter {
  std::uint8_t code = 0;

  [[nodiscard]] constexpr Letter inverse() const {
    return Letter{static_cast<std::uint8_t>(code ^ 1u)};
  }
  [[nodiscard]] constexpr unsigned generator_index() const { return code >> 1; }
  [[nodiscard]] constexpr int sign() const { return (code & 1u) ? -1 : +1; }
  [[nodiscard]] constexpr std::uint8_t rank() const {
    return static_cast<std::uint8_t>(((code & 1u) << 1) | (code >> 1));
  }
  [[nodiscard]] char to_char() const { return "aAbB"[code & 3u]; }

  friend constexpr bool operator==(Letter, Letter) = default;
};

namespace letters {
inline constexpr Letter a{0}, A{1}, b{2}, B{3};
}  // namespace letters

// the alphabet listed in comparison order
inline constexpr std::array<Letter, 4> kAlphabet = {letters::a, letters::b,
                                                    letters::A, letters::B};

struct WordParseError : std::invalid_argument {
  std::size_t position;  // 1-based offset of the offending character
  explicit WordParseError(std::size_t pos)
      : std::invalid_argument("invalid word character at position " +
                              std::to_string(pos)),
        position(pos) {}
};

inline std::optional<Letter> letter_from_char(char c) {
  switch (c) {
    case 'a': return letters::a;
    case 'A': return letters::A;
    case 'b': return letters::b;
    case 'B': return letters::B;
    default: return std::nullopt;
  }
}

// Text format: generators `a`, `b`; inverses `A`, `B`; no separators.
inline std::vector<Letter> parse_word(std::string_view text) {
  std::vector<Letter> out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    auto l = letter_from_char(text[i]);
    if (!l) throw WordParseError(i + 1);
    out.push_back(*l);
  }
  return out;
}

inline std::string format_word(std::span<const Letter> w) {
  std::string s;
  s.reserve(w.size());
  for (Letter l : w) s.push_back(l.to_char());
  return s;
}

// lexicographic comparison under the fixed letter order
inline bool word_rank_less(std::span<const Letter> x, std::span<const Letter> y) {
  const std::size_t m = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < m; ++i) {
    if (x[i].rank() != y[i].rank()) return x[i].rank() < y[i].rank();
  }
  return x.size() < y.size();
}

}  // namespace sicgram
