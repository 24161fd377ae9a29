#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <random>
#include <thread>

#include "sicgram/census.hpp"
#include "sicgram/checkpoint.hpp"
#include "sicgram/count.hpp"
#include "sicgram/histogram.hpp"
#include "sicgram/report.hpp"
#include "support/naive_oracle.hpp"

using namespace sicgram;

namespace {

std::filesystem::path fresh_dir(const char* tag) {
  auto dir = std::filesystem::temp_directory_path() /
             ("sicgram-test-" + std::string(tag) + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("histogram merge laws") {
  Histogram h1{4, {{0, 1}}}, h2{4, {{0, 2}}}, h3{4, {{1, 5}, {3, 7}}};
  CHECK(merge(h1, h2).bins == std::map<std::uint32_t, std::uint64_t>{{0, 3}});
  const Histogram empty{4, {}};
  CHECK(merge(h3, empty) == h3);
  CHECK(merge(merge(h1, h2), h3) == merge(h1, merge(h2, h3)));
  CHECK(merge(h1, h3) == merge(h3, h1));
  Histogram other{5, {}};
  CHECK_THROWS_AS(merge(h1, other), std::invalid_argument);
}

TEST_CASE("diagnostics: pinned values and degenerate cases") {
  {
    const Histogram h{0, {{0, 1}, {2, 1}}};
    const auto d = diagnostics(h);
    CHECK(d.total == 2);
    CHECK(d.mean == 1.0);
    CHECK(d.variance == 1.0);
    REQUIRE(d.skewness.has_value());
    CHECK(*d.skewness == 0.0);
  }
  {
    const Histogram h{0, {{5, 100}}};
    const auto d = diagnostics(h);
    CHECK(d.variance == 0.0);
    CHECK_FALSE(d.skewness.has_value());
    CHECK_FALSE(d.excess_kurtosis.has_value());
    CHECK(d.fit_distance == 1.0);
  }
  CHECK_THROWS_AS(diagnostics(Histogram{}), std::invalid_argument);

  // normalized moments are scale invariant: h + h matches h
  const Histogram h{8, {{0, 3}, {2, 5}, {7, 1}, {9, 4}}};
  const auto d1 = diagnostics(h);
  const auto d2 = diagnostics(merge(h, h));
  CHECK(d2.total == 2 * d1.total);
  CHECK(d2.mean == Catch::Approx(d1.mean).epsilon(1e-12));
  CHECK(d2.variance == Catch::Approx(d1.variance).epsilon(1e-12));
  CHECK(*d2.skewness == Catch::Approx(*d1.skewness).epsilon(1e-12));
  CHECK(d2.fit_distance == Catch::Approx(d1.fit_distance).epsilon(1e-12));
}

TEST_CASE("diagnostics: moments agree with direct recomputation") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 50; ++t) {
    Histogram h{12, {}};
    const int nbins = 1 + static_cast<int>(rng() % 20);
    for (int i = 0; i < nbins; ++i) h.add(rng() % 60, 1 + rng() % 10000);
    const auto d = diagnostics(h);
    long double mean = 0, var = 0;
    for (const auto& [k, c] : h.bins) mean += static_cast<long double>(k) * c;
    mean /= d.total;
    for (const auto& [k, c] : h.bins) var += (k - mean) * (k - mean) * c;
    var /= d.total;
    CHECK(d.mean == Catch::Approx(static_cast<double>(mean)).epsilon(1e-9));
    CHECK(d.variance == Catch::Approx(static_cast<double>(var)).epsilon(1e-9));
  }
}

TEST_CASE("run_shard: small pinned histograms") {
  const SurfaceOrder order;
  {
    const auto h = run_shard(ShardSpec{1, {}}, order, std::nullopt);
    CHECK(h.bins == std::map<std::uint32_t, std::uint64_t>{{0, 4}});
  }
  {
    const auto h = run_shard(ShardSpec{2, {}}, order, std::nullopt);
    CHECK(h.bins == std::map<std::uint32_t, std::uint64_t>{{0, 4}});
  }
}

TEST_CASE("census: totals, determinism across workers and shard sizes") {
  const SurfaceOrder order;
  CensusOptions o1;
  o1.workers = 1;
  o1.prefix_len = 0;
  const auto base = census(8, order, o1);
  CHECK(u128{base.total()} == count_classes(8, true));
  CHECK(base.length == 8);

  // frozen from the hyperbolic-geometry reference
  const std::map<std::uint32_t, std::uint64_t> expected8 = {
      {0, 16}, {1, 24}, {2, 52}, {3, 76}, {4, 116},
      {5, 156}, {6, 136}, {7, 104}, {8, 90}, {9, 40}};
  CHECK(base.bins == expected8);

  for (unsigned workers : {2u, 5u}) {
    for (std::uint32_t plen : {1u, 3u, 8u, 12u}) {
      CensusOptions o;
      o.workers = workers;
      o.prefix_len = plen;
      CHECK(census(8, order, o) == base);
    }
  }
}

TEST_CASE("census: histogram of simple classes matches slope counting") {
  // number of simple classes at length n: 4 at n=1, otherwise 4*phi(n)
  // plus the two boundary classes at n=4
  const SurfaceOrder order;
  for (std::uint32_t n = 1; n <= 10; ++n) {
    CensusOptions o;
    o.workers = 2;
    const auto h = census(n, order, o);
    const std::uint64_t simple = h.bins.count(0) ? h.bins.at(0) : 0;
    const std::uint64_t expected =
        (n == 1 ? 4 : 4 * num::totient(n)) + (n == 4 ? 2 : 0);
    CHECK(simple == expected);
  }
}

TEST_CASE("checkpoint json round trip and filename") {
  Checkpoint c;
  c.shard = ShardSpec{12, parse_word("aab")};
  c.last_emitted = parse_word("aabaabaababA");
  c.partial = Histogram{12, {{0, 2}, {5, 9}}};
  c.engine_version = std::string(kEngineVersion);
  c.order = SurfaceOrder{};
  CHECK(checkpoint_filename(c.shard) == "shard-aab.ckpt.json");
  const auto round = checkpoint_from_json(checkpoint_to_json(c));
  CHECK(round.shard == c.shard);
  CHECK(round.last_emitted == c.last_emitted);
  CHECK(round.partial == c.partial);
  CHECK(round.engine_version == c.engine_version);
  CHECK(round.order == c.order);

  const auto dir = fresh_dir("ckpt");
  save_checkpoint(dir, c);
  const auto loaded = load_checkpoint(dir, c.shard);
  REQUIRE(loaded.has_value());
  CHECK(loaded->partial == c.partial);
  CHECK_FALSE(load_checkpoint(dir, ShardSpec{12, parse_word("abb")}).has_value());
  std::filesystem::remove_all(dir);
}

TEST_CASE("run_shard refuses mismatched checkpoints") {
  const SurfaceOrder order;
  const ShardSpec spec{6, parse_word("a")};
  Checkpoint c;
  c.shard = spec;
  c.engine_version = std::string(kEngineVersion);
  c.order = order;
  c.partial.length = 6;

  Checkpoint wrong_shard = c;
  wrong_shard.shard.prefix = parse_word("b");
  CHECK_THROWS_AS(run_shard(spec, order, wrong_shard), CheckpointMismatchError);

  Checkpoint wrong_version = c;
  wrong_version.engine_version = "0.0.0";
  CHECK_THROWS_AS(run_shard(spec, order, wrong_version), CheckpointMismatchError);

  Checkpoint wrong_order = c;
  wrong_order.order = SurfaceOrder({letters::a, letters::b, letters::B, letters::A},
                                   letters::A);
  CHECK_THROWS_AS(run_shard(spec, order, wrong_order), CheckpointMismatchError);

  // a matching (empty) checkpoint is accepted and equivalent to a cold start
  const auto cold = run_shard(spec, order, std::nullopt);
  const auto resumed = run_shard(spec, order, c);
  CHECK(cold == resumed);
}

TEST_CASE("census: kill and resume reproduces the uninterrupted histogram") {
  const SurfaceOrder order;
  CensusOptions clean;
  clean.workers = 2;
  const auto expected = census(9, order, clean);

  std::mt19937_64 rng(31);
  const std::uint64_t total = static_cast<std::uint64_t>(count_classes(9, true));
  for (int trial = 0; trial < 4; ++trial) {
    const auto dir = fresh_dir(("resume" + std::to_string(trial)).c_str());
    // cutting in the first half leaves the watcher ample time to fire
    const std::uint64_t cut = 1 + rng() % (total / 2);

    std::atomic<bool> cancel{false};
    std::atomic<std::uint64_t> progress{0};
    std::thread watcher([&] {
      while (progress.load() < cut && !cancel.load()) std::this_thread::yield();
      cancel.store(true);
    });
    CensusOptions interrupted;
    interrupted.workers = 2;
    interrupted.checkpoint_dir = dir;
    interrupted.checkpoint_every = 128;
    interrupted.cancel = &cancel;
    interrupted.progress = &progress;
    CHECK_THROWS_AS(census(9, order, interrupted), CensusInterrupted);
    cancel.store(true);
    watcher.join();

    CensusOptions resume;
    resume.workers = 2;
    resume.checkpoint_dir = dir;
    const auto h = census(9, order, resume);
    CHECK(h == expected);
    CHECK(histogram_to_csv(h) == histogram_to_csv(expected));
    std::filesystem::remove_all(dir);
  }
}
