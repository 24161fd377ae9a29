#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sicgram {

// Class counts exceed 64 bits well before the n <= 64 support limit
// (R(64) ~ 3^64), so counting is done in 128-bit integers throughout.
using u128 = unsigned __int128;

inline std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

namespace num {

inline int mobius(unsigned n) {
  int r = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      r = -r;
    }
  }
  if (n > 1) r = -r;
  return r;
}

inline unsigned totient(unsigned n) {
  unsigned r = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

}  // namespace num

constexpr unsigned kMaxCountLength = 64;

// Number of cyclically reduced words of length n over {a,b,a^-1,b^-1}:
// trace of the n-th power of the no-cancellation transfer matrix, whose
// eigenvalues are 3, 1, 1, -1.
inline u128 reduced_cyclic_word_count(unsigned n) {
  if (n == 0) throw std::invalid_argument("reduced_cyclic_word_count: n must be >= 1");
  if (n > kMaxCountLength)
    throw std::invalid_argument("reduced_cyclic_word_count: n > 64 unsupported");
  u128 pow3 = 1;
  for (unsigned i = 0; i < n; ++i) pow3 *= 3;
  return pow3 + 2 + (n % 2 == 0 ? 1 : -1);
}

// Conjugacy classes of cyclically reduced words of length n, by necklace
// counting: totient transform for all classes, Moebius transform for the
// primitive (non-power) ones.
inline u128 count_classes(unsigned n, bool primitive_only = true) {
  if (n == 0) throw std::invalid_argument("count_classes: n must be >= 1");
  if (n > kMaxCountLength) throw std::invalid_argument("count_classes: n > 64 unsupported");
  u128 pos = 0, neg = 0;
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    const u128 r = reduced_cyclic_word_count(d);
    if (primitive_only) {
      const int mu = num::mobius(n / d);
      if (mu > 0) pos += r;
      if (mu < 0) neg += r;
    } else {
      pos += u128{num::totient(n / d)} * r;
    }
  }
  const u128 sum = pos - neg;
  if (sum % n != 0) throw std::logic_error("count_classes: divisor sum not divisible by n");
  return sum / n;
}

}  // namespace sicgram
