#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>

#include "sicgram/count.hpp"

namespace sicgram {

// Self-intersection count -> number of classes, for one combinatorial length.
// Zero-valued bins are never stored.
struct Histogram {
  std::uint32_t length = 0;
  std::map<std::uint32_t, std::uint64_t> bins;

  void add(std::uint32_t k, std::uint64_t count = 1) {
    if (count != 0) bins[k] += count;
  }

  [[nodiscard]] std::uint64_t total() const {
    std::uint64_t t = 0;
    for (const auto& [k, c] : bins) t += c;
    return t;
  }

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

inline void merge_into(Histogram& into, const Histogram& from) {
  if (into.length != from.length)
    throw std::invalid_argument("merge: histogram length mismatch");
  for (const auto& [k, c] : from.bins) into.add(k, c);
}

// Pointwise sum; associative and commutative.
inline Histogram merge(const Histogram& h1, const Histogram& h2) {
  Histogram out = h1;
  merge_into(out, h2);
  return out;
}

struct DistributionDiagnostics {
  std::uint64_t total = 0;
  double mean = 0;
  double variance = 0;
  // Undefined for a degenerate (single-bin) histogram.
  std::optional<double> skewness, excess_kurtosis;
  // Total-variation distance to the normal density with matched mean and
  // variance, evaluated per integer bin over [0, max k] and renormalized.
  double fit_distance = 0;
};

inline DistributionDiagnostics diagnostics(const Histogram& h) {
  if (h.bins.empty()) throw std::invalid_argument("diagnostics: empty histogram");
  // raw moments accumulate exactly in 128-bit integers; normalization last
  u128 s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  std::uint64_t total = 0;
  for (const auto& [k, c] : h.bins) {
    const u128 kk = k;
    s1 += kk * c;
    s2 += kk * kk * c;
    s3 += kk * kk * kk * c;
    s4 += kk * kk * kk * kk * c;
    total += c;
  }
  DistributionDiagnostics d;
  d.total = total;
  const double n = static_cast<double>(total);
  const double m1 = static_cast<double>(static_cast<long double>(s1)) / n;
  const double m2 = static_cast<double>(static_cast<long double>(s2)) / n;
  const double m3 = static_cast<double>(static_cast<long double>(s3)) / n;
  const double m4 = static_cast<double>(static_cast<long double>(s4)) / n;
  d.mean = m1;
  if (h.bins.size() == 1) {
    d.variance = 0;
    d.fit_distance = 1;
    return d;
  }
  const double var = m2 - m1 * m1;
  d.variance = var;
  const double mu3 = m3 - 3 * m1 * m2 + 2 * m1 * m1 * m1;
  const double mu4 = m4 - 4 * m1 * m3 + 6 * m1 * m1 * m2 - 3 * m1 * m1 * m1 * m1;
  d.skewness = mu3 / std::pow(var, 1.5);
  d.excess_kurtosis = mu4 / (var * var) - 3;

  const std::uint32_t max_k = h.bins.rbegin()->first;
  double z = 0;
  for (std::uint32_t k = 0; k <= max_k; ++k) {
    const double dev = k - d.mean;
    z += std::exp(-dev * dev / (2 * var));
  }
  double tv = 0;
  for (std::uint32_t k = 0; k <= max_k; ++k) {
    const double dev = k - d.mean;
    const double q = std::exp(-dev * dev / (2 * var)) / z;
    const auto it = h.bins.find(k);
    const double p = it == h.bins.end() ? 0.0 : static_cast<double>(it->second) / n;
    tv += std::abs(p - q);
  }
  d.fit_distance = tv / 2;
  return d;
}

}  // namespace sicgram
