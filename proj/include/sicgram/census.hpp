#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "sicgram/checkpoint.hpp"
#include "sicgram/count.hpp"
#include "sicgram/enumerate.hpp"
#include "sicgram/histogram.hpp"
#include "sicgram/intersection.hpp"

namespace sicgram {

struct CensusInterrupted : std::runtime_error {
  CensusInterrupted() : std::runtime_error("census interrupted") {}
};

struct MassLawError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultCheckpointEvery = 1u << 20;

// All reduced prefixes of the given length, in lexicographic order. Their
// shards are pairwise disjoint and jointly cover every class.
inline std::vector<ShardSpec> list_shards(std::uint32_t n, std::uint32_t prefix_len) {
  if (n == 0) throw std::invalid_argument("list_shards: length must be >= 1");
  prefix_len = std::min(prefix_len, n);
  std::vector<ShardSpec> shards;
  std::vector<Letter> cur;
  auto rec = [&](auto&& self, std::uint32_t depth) -> void {
    if (depth == prefix_len) {
      shards.push_back({n, cur});
      return;
    }
    for (Letter l : kAlphabet) {
      if (!cur.empty() && l == cur.back().inverse()) continue;
      cur.push_back(l);
      self(self, depth + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return shards;
}

struct ShardRunOptions {
  std::filesystem::path checkpoint_dir;  // empty: no checkpointing
  std::uint64_t checkpoint_every = kDefaultCheckpointEvery;
  const std::atomic<bool>* cancel = nullptr;
  std::atomic<std::uint64_t>* progress = nullptr;
};

// Histogram over exactly the primitive classes of one shard. Deterministic
// for fixed spec and order; resumable mid-shard through the cursor. On
// cancellation the current state is checkpointed (when a directory is set)
// and CensusInterrupted is thrown.
inline Histogram run_shard(const ShardSpec& spec, const SurfaceOrder& order,
                           const std::optional<Checkpoint>& resume,
                           const ShardRunOptions& opts = {}) {
  if (spec.length == 0) throw std::invalid_argument("run_shard: length must be >= 1");
  Histogram hist;
  hist.length = spec.length;
  EnumerateOptions eopts;
  eopts.prefix = spec.prefix;
  if (resume) {
    if (resume->shard != spec)
      throw CheckpointMismatchError("checkpoint is for shard '" +
                                    format_word(resume->shard.prefix) + "' length " +
                                    std::to_string(resume->shard.length) +
                                    ", not the requested shard");
    if (resume->engine_version != kEngineVersion)
      throw CheckpointMismatchError("checkpoint engine version '" + resume->engine_version +
                                    "' does not match '" + std::string(kEngineVersion) +
                                    "'; counts are not comparable across engines");
    if (!(resume->order == order))
      throw CheckpointMismatchError("checkpoint surface order " +
                                    resume->order.cycle_text() +
                                    " does not match the requested order");
    hist = resume->partial;
    hist.length = spec.length;
    if (!resume->last_emitted.empty()) eopts.resume_after = resume->last_emitted;
  }

  SelfIntersectionEngine engine(order);
  Checkpoint ckpt{spec, resume ? resume->last_emitted : std::vector<Letter>{},
                  hist, std::string(kEngineVersion), order};
  std::uint64_t since_checkpoint = 0;
  bool interrupted = false;

  enumerate_classes(spec.length, [&](std::span<const Letter> word) -> bool {
    hist.add(engine.compute(word));
    ckpt.last_emitted.assign(word.begin(), word.end());
    ++since_checkpoint;
    if (opts.progress) opts.progress->fetch_add(1, std::memory_order_relaxed);
    if (!opts.checkpoint_dir.empty() && since_checkpoint >= opts.checkpoint_every) {
      ckpt.partial = hist;
      save_checkpoint(opts.checkpoint_dir, ckpt);
      since_checkpoint = 0;
    }
    if (opts.cancel && opts.cancel->load(std::memory_order_relaxed)) {
      interrupted = true;
      return false;
    }
    return true;
  }, eopts);

  if (!opts.checkpoint_dir.empty()) {
    ckpt.partial = hist;
    save_checkpoint(opts.checkpoint_dir, ckpt);
  }
  if (interrupted) throw CensusInterrupted();
  return hist;
}

struct CensusOptions {
  unsigned workers = 1;
  std::uint32_t prefix_len = 3;
  std::filesystem::path checkpoint_dir;  // empty: no checkpointing
  std::uint64_t checkpoint_every = kDefaultCheckpointEvery;
  const std::atomic<bool>* cancel = nullptr;
  std::atomic<std::uint64_t>* progress = nullptr;
};

// Complete census of length n: sharded enumeration on a fixed-size worker
// pool, one aggregator applying the commutative merge, hard total-mass check
// against the class-count formula. The result is identical for any worker
// count, shard granularity, and interruption/resume history.
inline Histogram census(std::uint32_t n, const SurfaceOrder& order,
                        const CensusOptions& opts = {}) {
  if (n == 0) throw std::invalid_argument("census: length must be >= 1");
  if (opts.workers == 0) throw std::invalid_argument("census: workers must be >= 1");

  const auto shards = list_shards(n, opts.prefix_len);
  Histogram aggregate;
  aggregate.length = n;

  std::atomic<bool> stop{false};
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr first_error;
  bool interrupted = false;

  // A watcher maps the caller's cancel flag onto the internal stop flag so
  // workers poll a single location.
  std::atomic<bool> watcher_done{false};
  std::thread watcher;
  if (opts.cancel) {
    watcher = std::thread([&] {
      while (!watcher_done.load(std::memory_order_relaxed)) {
        if (opts.cancel->load(std::memory_order_relaxed)) {
          stop.store(true, std::memory_order_relaxed);
          return;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
      }
    });
  }

  auto worker = [&] {
    ShardRunOptions sopts;
    sopts.checkpoint_dir = opts.checkpoint_dir;
    sopts.checkpoint_every = opts.checkpoint_every;
    sopts.cancel = &stop;
    sopts.progress = opts.progress;
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= shards.size() || stop.load(std::memory_order_relaxed)) return;
      try {
        std::optional<Checkpoint> resume;
        if (!opts.checkpoint_dir.empty())
          resume = load_checkpoint(opts.checkpoint_dir, shards[i]);
        Histogram h = run_shard(shards[i], order, resume, sopts);
        std::lock_guard<std::mutex> lock(mu);
        merge_into(aggregate, h);
      } catch (const CensusInterrupted&) {
        std::lock_guard<std::mutex> lock(mu);
        interrupted = true;
        return;
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first_error) first_error = std::current_exception();
        stop.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  const unsigned nworkers = std::min<std::size_t>(opts.workers, shards.size());
  pool.reserve(nworkers);
  for (unsigned i = 0; i < nworkers; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  watcher_done.store(true, std::memory_order_relaxed);
  if (watcher.joinable()) watcher.join();

  if (first_error) std::rethrow_exception(first_error);
  if (interrupted || stop.load(std::memory_order_relaxed)) throw CensusInterrupted();

  const u128 expected = count_classes(n, /*primitive_only=*/true);
  if (u128{aggregate.total()} != expected)
    throw MassLawError("census mass check failed: histogram total " +
                       std::to_string(aggregate.total()) + " != class count " +
                       u128_to_string(expected));
  return aggregate;
}

}  // namespace sicgram
