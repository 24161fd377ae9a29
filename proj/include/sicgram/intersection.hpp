#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "sicgram/letter.hpp"
#include "sicgram/ray.hpp"
#include "sicgram/surface.hpp"
#include "sicgram/word.hpp"

namespace sicgram {

struct NonPrimitiveError : std::domain_error {
  using std::domain_error::domain_error;
};

// Strand i sits at the vertex between letters w_{i-1} and w_i; its lift has
// the two boundary endpoints neg (backward ray) and pos (forward ray).
struct Strand {
  std::uint32_t index = 0;
  Ray neg, pos;
};

inline Strand make_strand(std::span<const Letter> word, std::uint32_t index) {
  return {index, Ray{word, index, RayDirection::backward},
          Ray{word, index, RayDirection::forward}};
}

namespace detail {

// Crossing lifts shared between several strand pairs must be counted once.
// The two lifts of a crossing pair run together along a maximal window of
// shared edges (same direction or opposite), and every pair straddling the
// window sees the same endpoint alternation. The window is identified from
// the four first letters: neg/neg equal means a parallel window extending
// into the past (the pair is not its canonical end); neg/pos coincidences
// mean an antiparallel window, whose two end pairs are told apart by the
// chirality of the shared edge against the diverging pair in the surface
// cycle. Exactly one pair per window passes.
inline bool owns_crossing(Letter neg_x, Letter pos_x, Letter neg_y, Letter pos_y,
                          const SurfaceOrder& order) {
  if (neg_x == neg_y) return false;  // parallel window, not its past end
  const bool x_past_shared = neg_x == pos_y;
  const bool y_past_shared = pos_x == neg_y;
  if (x_past_shared && y_past_shared) return false;  // antiparallel interior
  if (!x_past_shared && !y_past_shared) return true;
  Letter shared, diverge_fwd, diverge_bwd;
  if (x_past_shared) {
    shared = neg_x;
    diverge_fwd = pos_x;
    diverge_bwd = neg_y;
  } else {
    shared = pos_x;
    diverge_fwd = pos_y;
    diverge_bwd = neg_x;
  }
  return order.rank_after(shared, diverge_fwd) < order.rank_after(shared, diverge_bwd);
}

}  // namespace detail

// Whether this strand pair contributes a crossing: the endpoint pairs
// alternate around the circle at infinity (alternation is invariant under
// the cut, so a linear sort suffices) and the pair is the canonical
// representative of its crossing among the pairs that straddle it.
inline bool linked(const Strand& s, const Strand& t, const SurfaceOrder& order) {
  struct Entry {
    const Ray* ray;
    bool of_t;
  };
  std::array<Entry, 4> e{{{&s.neg, false}, {&s.pos, false}, {&t.neg, true}, {&t.pos, true}}};
  for (std::size_t i = 1; i < 4; ++i) {
    Entry cur = e[i];
    std::size_t j = i;
    while (j > 0) {
      const RayOrder c = compare_rays(*cur.ray, *e[j - 1].ray, order);
      if (c == RayOrder::equal)
        throw std::domain_error(
            "linked: coincident ray endpoints (non-primitive word or caller bug)");
      if (c != RayOrder::less) break;
      e[j] = e[j - 1];
      --j;
    }
    e[j] = cur;
  }
  const bool alternates =
      e[0].of_t != e[1].of_t && e[0].of_t == e[2].of_t && e[1].of_t == e[3].of_t;
  if (!alternates) return false;
  return detail::owns_crossing(ray_letter(s.neg, 0), ray_letter(s.pos, 0),
                               ray_letter(t.neg, 0), ray_letter(t.pos, 0), order);
}

// Counts linked strand pairs of one primitive class. Accepts any rotation of
// the cyclically reduced word. Rays are never materialized beyond two doubled
// letter buffers per word; scratch is reused across calls, so one engine per
// worker thread.
class SelfIntersectionEngine {
 public:
  explicit SelfIntersectionEngine(SurfaceOrder order = {}) : order_(order) {}

  [[nodiscard]] const SurfaceOrder& order() const { return order_; }

  std::uint32_t compute(const CyclicWord& w) { return compute(w.letters()); }

  std::uint32_t compute(std::span<const Letter> word) {
    const std::size_t n = word.size();
    if (n == 0) throw std::invalid_argument("self_intersection: empty word");
    if (!is_cyclically_reduced(word))
      throw std::invalid_argument("self_intersection: word not cyclically reduced");
    if (!is_primitive_word(word))
      throw NonPrimitiveError("self_intersection: non-power classes only");
    if (n == 1) return 0;

    // fwd2_ holds w.w ; bwd2_ holds v.v with v the inverse word, so that the
    // backward ray at phase i is the forward ray of v at phase (n-i) mod n.
    fwd2_.resize(2 * n);
    bwd2_.resize(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      fwd2_[i] = fwd2_[i + n] = word[i];
      bwd2_[i] = bwd2_[i + n] = word[n - 1 - i].inverse();
    }
    auto ray_base = [&](std::uint32_t id) -> const Letter* {
      return id < n ? fwd2_.data() + id : bwd2_.data() + (n - (id - n)) % n;
    };

    sorted_.resize(2 * n);
    std::iota(sorted_.begin(), sorted_.end(), 0u);
    std::sort(sorted_.begin(), sorted_.end(), [&](std::uint32_t x, std::uint32_t y) {
      return compare(ray_base(x), ray_base(y), n) == RayOrder::less;
    });
    for (std::size_t i = 1; i < 2 * n; ++i) {
      if (compare(ray_base(sorted_[i - 1]), ray_base(sorted_[i]), n) == RayOrder::equal)
        throw std::logic_error("self_intersection: coincident rays on primitive input");
    }
    rank_.resize(2 * n);
    for (std::uint32_t r = 0; r < 2 * n; ++r) rank_[sorted_[r]] = r;

    lo_.resize(n);
    hi_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto rf = rank_[i], rb = rank_[i + n];
      lo_[i] = std::min(rf, rb);
      hi_[i] = std::max(rf, rb);
    }
    std::uint32_t crossings = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Letter neg_i = bwd2_[(n - i) % n];
      const Letter pos_i = fwd2_[i];
      for (std::size_t j = i + 1; j < n; ++j) {
        const bool cross = (lo_[i] < lo_[j] && lo_[j] < hi_[i] && hi_[i] < hi_[j]) ||
                           (lo_[j] < lo_[i] && lo_[i] < hi_[j] && hi_[j] < hi_[i]);
        if (!cross) continue;
        const Letter neg_j = bwd2_[(n - j) % n];
        const Letter pos_j = fwd2_[j];
        if (detail::owns_crossing(neg_i, pos_i, neg_j, pos_j, order_)) ++crossings;
      }
    }
    return crossings;
  }

 private:
  // Same comparison as compare_rays, on contiguous doubled buffers.
  RayOrder compare(const Letter* x, const Letter* y, std::size_t n) const {
    for (std::size_t k = 0; k < n; ++k) {
      if (x[k] != y[k]) {
        const std::uint8_t rx = k == 0 ? order_.rank_at_root(x[k])
                                       : order_.rank_after(x[k - 1].inverse(), x[k]);
        const std::uint8_t ry = k == 0 ? order_.rank_at_root(y[k])
                                       : order_.rank_after(x[k - 1].inverse(), y[k]);
        return rx < ry ? RayOrder::less : RayOrder::greater;
      }
    }
    return RayOrder::equal;
  }

  SurfaceOrder order_;
  std::vector<Letter> fwd2_, bwd2_;
  std::vector<std::uint32_t> sorted_, rank_, lo_, hi_;
};

inline std::uint32_t self_intersection(std::span<const Letter> word,
                                       const SurfaceOrder& order = punctured_torus_order()) {
  SelfIntersectionEngine engine(order);
  return engine.compute(word);
}

inline std::uint32_t self_intersection(const CyclicWord& w,
                                       const SurfaceOrder& order = punctured_torus_order()) {
  return self_intersection(w.letters(), order);
}

}  // namespace sicgram
