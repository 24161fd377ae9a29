#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

#include "sicgram/letter.hpp"
#include "sicgram/surface.hpp"

namespace sicgram {

enum class RayDirection : std::uint8_t { forward, backward };

// One boundary-at-infinity endpoint of a strand lift: the infinite periodic
// reduced word read from phase i. Forward at phase i is w_i w_{i+1} ...;
// backward is (w_{i-1})^-1 (w_{i-2})^-1 ... (indices mod n). The view must
// outlive the ray.
struct Ray {
  std::span<const Letter> word;
  std::uint32_t phase = 0;
  RayDirection direction = RayDirection::forward;
};

inline Letter ray_letter(const Ray& r, std::uint64_t k) {
  const std::uint64_t n = r.word.size();
  if (n == 0) throw std::invalid_argument("ray_letter: empty word");
  if (r.direction == RayDirection::forward) {
    return r.word[(r.phase + k) % n];
  }
  const std::uint64_t idx = (r.phase + 2 * n - 1 - k % n) % n;  // (phase-1-k) mod n
  return r.word[idx].inverse();
}

enum class RayOrder { less, equal, greater };

// Total order on the rays of one class, realizing the circular order of their
// boundary points cut at the basepoint: walk the two infinite words together;
// at the first difference rank the letters by cutting the surface cycle just
// after the incoming direction (just after root_cut at depth 0). Agreement
// through n letters forces equality, both words being periodic with period
// dividing n.
inline RayOrder compare_rays(const Ray& x, const Ray& y, const SurfaceOrder& order) {
  const std::uint64_t n = x.word.size();
  if (y.word.size() != n)
    throw std::invalid_argument("compare_rays: rays of different word lengths");
  Letter prev{};
  for (std::uint64_t k = 0; k < n; ++k) {
    const Letter lx = ray_letter(x, k);
    const Letter ly = ray_letter(y, k);
    if (lx != ly) {
      const std::uint8_t rx = k == 0 ? order.rank_at_root(lx)
                                     : order.rank_after(prev.inverse(), lx);
      const std::uint8_t ry = k == 0 ? order.rank_at_root(ly)
                                     : order.rank_after(prev.inverse(), ly);
      return rx < ry ? RayOrder::less : RayOrder::greater;
    }
    prev = lx;
  }
  return RayOrder::equal;
}

}  // namespace sicgram
