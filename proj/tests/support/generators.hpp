#pragma once

// Random-word and automorphism helpers for property tests.

#include <array>
#include <random>
#include <span>
#include <vector>

#include "sicgram/letter.hpp"
#include "sicgram/word.hpp"

namespace sicgram::testing {

// Uniformly random reduced word of the given length.
inline std::vector<Letter> random_reduced_word(std::mt19937_64& rng, std::size_t len) {
  std::vector<Letter> w;
  w.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    for (;;) {
      const Letter l = kAlphabet[rng() % 4];
      if (!w.empty() && l == w.back().inverse()) continue;
      w.push_back(l);
      break;
    }
  }
  return w;
}

// Random primitive cyclically reduced word with length in [min_len, max_len].
inline std::vector<Letter> random_primitive_word(std::mt19937_64& rng, std::size_t min_len,
                                                 std::size_t max_len) {
  for (;;) {
    const std::size_t len = min_len + rng() % (max_len - min_len + 1);
    auto w = random_reduced_word(rng, len);
    if (is_cyclically_reduced(w) && is_primitive_word(w)) return w;
  }
}

// A free-group endomorphism given by the images of a and b. Images of
// inverses are the reversed inverted images.
struct LetterMap {
  std::array<std::vector<Letter>, 4> image;  // indexed by Letter::code

  static LetterMap from_images(std::vector<Letter> img_a, std::vector<Letter> img_b) {
    LetterMap m;
    auto invert = [](const std::vector<Letter>& v) {
      std::vector<Letter> out;
      for (auto it = v.rbegin(); it != v.rend(); ++it) out.push_back(it->inverse());
      return out;
    };
    m.image[letters::a.code] = img_a;
    m.image[letters::A.code] = invert(img_a);
    m.image[letters::b.code] = img_b;
    m.image[letters::B.code] = invert(img_b);
    return m;
  }

  [[nodiscard]] std::vector<Letter> apply(std::span<const Letter> w) const {
    std::vector<Letter> out;
    for (Letter l : w) {
      const auto& img = image[l.code];
      out.insert(out.end(), img.begin(), img.end());
    }
    return free_reduce(out);
  }
};

// Generators of the automorphism group of the rank-2 free group:
// swap a<->b; invert a; a -> ab.
inline const std::array<LetterMap, 3>& automorphism_generators() {
  using namespace letters;
  static const std::array<LetterMap, 3> gens = {
      LetterMap::from_images({b}, {a}),
      LetterMap::from_images({A}, {b}),
      LetterMap::from_images({a, b}, {b}),
  };
  return gens;
}

}  // namespace sicgram::testing
