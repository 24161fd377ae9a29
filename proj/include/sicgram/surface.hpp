#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sicgram/letter.hpp"

namespace sicgram {

// Cyclic order of the four letters around the puncture. It induces the
// circular order on the boundary at infinity and thereby every linking
// decision. root_cut is the letter just after which the circle is cut to
// linearize comparisons at the basepoint.
class SurfaceOrder {
 public:
  SurfaceOrder() : SurfaceOrder({letters::a, letters::b, letters::A, letters::B}, letters::B) {}

  SurfaceOrder(std::array<Letter, 4> cycle, Letter root_cut)
      : cycle_(cycle), root_cut_(root_cut) {
    unsigned seen = 0;
    for (Letter l : cycle_) seen |= 1u << l.code;
    if (seen != 0b1111u)
      throw std::invalid_argument("SurfaceOrder: cycle must list all 4 letters once");
    std::array<std::uint8_t, 4> pos{};
    for (std::uint8_t i = 0; i < 4; ++i) pos[cycle_[i].code] = i;
    for (std::uint8_t c = 0; c < 4; ++c) {
      for (std::uint8_t l = 0; l < 4; ++l) {
        cut_rank_[c][l] = static_cast<std::uint8_t>((pos[l] - pos[c] + 4) % 4);
      }
    }
    for (std::uint8_t c = 0; c < 4; ++c) {
      // the cut letter itself sorts last at the root
      root_rank_[c] = cut_rank_[root_cut_.code][c] == 0 ? 4 : cut_rank_[root_cut_.code][c];
    }
  }

  [[nodiscard]] const std::array<Letter, 4>& cycle() const { return cycle_; }
  [[nodiscard]] Letter root_cut() const { return root_cut_; }

  // Rank of a first letter, cutting the circle just after root_cut.
  [[nodiscard]] std::uint8_t rank_at_root(Letter l) const { return root_rank_[l.code]; }
  // Rank of letter l among the directions out of a vertex entered along
  // incoming (l != incoming, guaranteed by reducedness).
  [[nodiscard]] std::uint8_t rank_after(Letter incoming, Letter l) const {
    return cut_rank_[incoming.code][l.code];
  }

  [[nodiscard]] std::string cycle_text() const {
    std::string s;
    for (Letter l : cycle_) s.push_back(l.to_char());
    return s;
  }

  friend bool operator==(const SurfaceOrder& x, const SurfaceOrder& y) {
    return x.cycle_ == y.cycle_ && x.root_cut_ == y.root_cut_;
  }

 private:
  std::array<Letter, 4> cycle_;
  Letter root_cut_;
  std::array<std::array<std::uint8_t, 4>, 4> cut_rank_{};
  std::array<std::uint8_t, 4> root_rank_{};
};

// The validated puncture order for the standard generators: cycle
// (a, b, a^-1, b^-1), cut after b^-1. The simplicity test suite pins this
// choice (all Christoffel words and the boundary class get count 0).
inline const SurfaceOrder& punctured_torus_order() {
  static const SurfaceOrder order;
  return order;
}

// Parse a 4-letter cycle such as "abAB"; the cut is after the last letter.
inline SurfaceOrder surface_order_from_text(std::string_view cycle4) {
  if (cycle4.size() != 4)
    throw std::invalid_argument("surface order: expected exactly 4 letters");
  std::array<Letter, 4> cycle{};
  for (std::size_t i = 0; i < 4; ++i) {
    auto l = letter_from_char(cycle4[i]);
    if (!l) throw std::invalid_argument("surface order: invalid letter");
    cycle[i] = *l;
  }
  return SurfaceOrder(cycle, cycle[3]);
}

}  // namespace sicgram
