#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "sicgram/letter.hpp"
#include "sicgram/word.hpp"

namespace sicgram {

// Lower Christoffel word of slope p/q: the lattice path from (0,0) to (q,p)
// running closest below the segment, with x-steps in a^{sign_a} and y-steps
// in b^{sign_b}. After i steps the path height is floor(i*p/(p+q)). These
// classes (plus the boundary class) are exactly the simple ones on the
// punctured torus, which makes them self-intersection-zero fixtures.
inline CyclicWord christoffel(std::uint32_t p, std::uint32_t q, int sign_a = +1,
                              int sign_b = +1) {
  if (p + q == 0) throw std::invalid_argument("christoffel: p + q must be >= 1");
  if (std::gcd(p, q) != 1)
    throw std::invalid_argument("christoffel: p and q must be coprime");
  if ((sign_a != 1 && sign_a != -1) || (sign_b != 1 && sign_b != -1))
    throw std::invalid_argument("christoffel: signs must be +1 or -1");
  const Letter la = sign_a > 0 ? letters::a : letters::A;
  const Letter lb = sign_b > 0 ? letters::b : letters::B;
  const std::uint64_t n = p + q;
  std::vector<Letter> w;
  w.reserve(n);
  for (std::uint64_t i = 1; i <= n; ++i) {
    const bool y_step = (i * p) / n != ((i - 1) * p) / n;
    w.push_back(y_step ? lb : la);
  }
  return CyclicWord(w);
}

}  // namespace sicgram
