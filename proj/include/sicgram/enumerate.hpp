#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "sicgram/letter.hpp"
#include "sicgram/word.hpp"

namespace sicgram {

struct EnumerateOptions {
  // Restrict the stream to canonical representatives starting with this
  // reduced sequence (the shard key). Must be reduced.
  std::vector<Letter> prefix;
  // Emit only words strictly after this one in lexicographic order
  // (checkpoint resume cursor). Must have length n and start with prefix.
  std::optional<std::vector<Letter>> resume_after;
  // When false, periodic (power) classes are emitted as well.
  bool primitive_only = true;
};

namespace detail {

// Aperiodic-necklace generation (FKM family) over the 4-letter alphabet in
// rank space, with the no-cancellation adjacency constraint applied during
// generation and the cyclic junction checked at emission. Emitted words are
// exactly the canonical (least-rotation) representatives, in lexicographic
// order. In rank space inversion pairs are r and r^2.
template <class Visit>
class ClassEnumerator {
 public:
  ClassEnumerator(std::uint32_t n, Visit& visit, std::span<const std::uint8_t> prefix,
                  std::span<const std::uint8_t> cursor, bool primitive_only)
      : n_(n), visit_(visit), prefix_(prefix), cursor_(cursor),
        primitive_only_(primitive_only) {}

  std::uint64_t run() {
    descend(1, 1, cursor_.empty());
    return emitted_;
  }

 private:
  static constexpr std::array<std::uint8_t, 4> kRankToCode = {0, 2, 1, 3};

  void descend(std::uint32_t t, std::uint32_t p, bool past_cursor) {
    if (stopped_) return;
    if (t > n_) {
      emit(p, past_cursor);
      return;
    }
    for (std::uint8_t r = rk_[t - p]; r < 4; ++r) {
      if (t >= 2 && r == (rk_[t - 1] ^ 2u)) continue;
      if (t <= prefix_.size() && prefix_[t - 1] != r) continue;
      bool past = past_cursor;
      if (!past) {
        if (r < cursor_[t - 1]) continue;  // subtree entirely <= cursor
        past = r > cursor_[t - 1];
      }
      rk_[t] = r;
      buf_[t - 1] = Letter{kRankToCode[r]};
      descend(t + 1, r == rk_[t - p] ? p : t, past);
      if (stopped_) return;
    }
  }

  void emit(std::uint32_t p, bool past_cursor) {
    if (!past_cursor) return;  // word equals the cursor
    if (primitive_only_ ? p != n_ : n_ % p != 0) return;
    if (rk_[1] == (rk_[n_] ^ 2u)) return;  // cyclic junction cancellation
    ++emitted_;
    const std::span<const Letter> word(buf_.data(), n_);
    if constexpr (std::is_void_v<std::invoke_result_t<Visit&, std::span<const Letter>>>) {
      visit_(word);
    } else {
      if (!visit_(word)) stopped_ = true;
    }
  }

  std::uint32_t n_;
  Visit& visit_;
  std::span<const std::uint8_t> prefix_;
  std::span<const std::uint8_t> cursor_;
  bool primitive_only_;
  std::array<std::uint8_t, 65> rk_{};  // rank values, 1-based; rk_[0] = 0
  std::array<Letter, 64> buf_{};
  std::uint64_t emitted_ = 0;
  bool stopped_ = false;
};

inline std::vector<std::uint8_t> to_ranks(std::span<const Letter> w) {
  std::vector<std::uint8_t> out;
  out.reserve(w.size());
  for (Letter l : w) out.push_back(l.rank());
  return out;
}

}  // namespace detail

// Stream every canonical cyclic word of length n exactly once, in
// lexicographic order, calling visit(std::span<const Letter>). The span is
// only valid during the call. visit may return bool (false stops the
// enumeration) or void. Returns the number of words emitted.
template <class Visit>
std::uint64_t enumerate_classes(std::uint32_t n, Visit&& visit,
                                const EnumerateOptions& opts = {}) {
  if (n == 0 || n > 64)
    throw std::invalid_argument("enumerate_classes: length must be in [1, 64]");
  if (!is_reduced(opts.prefix))
    throw std::invalid_argument("enumerate_classes: prefix is not reduced");
  if (opts.prefix.size() > n)
    throw std::invalid_argument("enumerate_classes: prefix longer than word length");
  std::vector<std::uint8_t> cursor;
  if (opts.resume_after && !opts.resume_after->empty()) {
    const auto& cur = *opts.resume_after;
    if (cur.size() != n)
      throw std::invalid_argument("enumerate_classes: resume cursor length mismatch");
    if (cur.size() < opts.prefix.size() ||
        !std::equal(opts.prefix.begin(), opts.prefix.end(), cur.begin()))
      throw std::invalid_argument("enumerate_classes: resume cursor outside shard");
    cursor = detail::to_ranks(cur);
  }
  const auto prefix = detail::to_ranks(opts.prefix);
  detail::ClassEnumerator<std::remove_reference_t<Visit>> gen(
      n, visit, prefix, cursor, opts.primitive_only);
  return gen.run();
}

}  // namespace sicgram
