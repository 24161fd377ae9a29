// sicgram: census of self-intersection numbers of free homotopy classes on
// the punctured torus, by combinatorial length.
//
// Exit codes: 0 success, 2 input/parse error, 3 domain violation
// (non-primitive word given to the intersection engine), 4 I/O failure,
// 130 interrupted with checkpoints intact.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "sicgram/sicgram.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIo = 4;
constexpr int kExitInterrupted = 130;

std::atomic<bool> g_interrupted{false};

void on_sigint(int) { g_interrupted.store(true); }

sicgram::SurfaceOrder order_from_flag(const std::string& text) {
  const auto order = sicgram::surface_order_from_text(text);
  if (!(order == sicgram::punctured_torus_order())) {
    std::cerr << "warning: surface order " << text
              << " is not the validated punctured-torus order; counts are "
                 "not checked for other surfaces\n";
  }
  return order;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw sicgram::IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw sicgram::IoError("cannot read " + path.string());
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out.is_open()) throw sicgram::IoError("cannot open " + path.string() + " for writing");
  out << data;
  out.flush();
  if (!out.good()) throw sicgram::IoError("cannot write " + path.string());
}

// Histogram input for stats/plot: JSON report or bare CSV, decided by content.
struct LoadedHistogram {
  sicgram::Histogram hist;
  bool has_length = false;
};

LoadedHistogram load_histogram(const std::filesystem::path& path) {
  const auto text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    auto rep = sicgram::report_from_json(text);
    return {std::move(rep.hist), true};
  }
  return {sicgram::histogram_from_csv(text), false};
}

int cmd_word(const std::string& text, const sicgram::SurfaceOrder& order) {
  const auto raw = sicgram::parse_word(text);
  const auto reduced = sicgram::free_reduce(raw);
  const auto core = sicgram::cyclic_reduce(reduced).core;
  std::cout << "canonical: " << core.str() << "\n";
  std::cout << "length: " << core.length() << "\n";
  std::cout << "primitive: " << (core.primitive() ? "true" : "false") << "\n";
  if (core.empty()) {
    std::cout << "note: trivial class; excluded from the census\n";
    return kExitDomain;
  }
  if (!core.primitive()) {
    std::cout << "primitive_root: " << sicgram::primitive_root(core).str() << "\n";
    std::cout << "note: non-power classes only; the count applies to the primitive root\n";
    return kExitDomain;
  }
  sicgram::SelfIntersectionEngine engine(order);
  std::cout << "self_intersection: " << engine.compute(core) << "\n";
  return kExitOk;
}

int cmd_count(unsigned length, unsigned enumerate_cap) {
  const auto formula = sicgram::count_classes(length, true);
  std::cout << "length: " << length << "\n";
  std::cout << "formula: " << sicgram::u128_to_string(formula) << "\n";
  if (length == 20) {
    std::cout << "note: sometimes quoted loosely as 'a hundred and fifty million'; "
                 "the exact count is 174336264\n";
  }
  if (length <= enumerate_cap) {
    std::uint64_t n = 0;
    sicgram::enumerate_classes(length, [&](std::span<const sicgram::Letter>) { ++n; });
    std::cout << "enumerated: " << n << "\n";
    std::cout << "verdict: " << (sicgram::u128{n} == formula ? "match" : "MISMATCH") << "\n";
  }
  return kExitOk;
}

unsigned default_workers() {
  if (const char* env = std::getenv("SICGRAM_WORKERS")) {
    const long v = std::atol(env);
    if (v >= 1) return static_cast<unsigned>(v);
    std::cerr << "warning: ignoring invalid SICGRAM_WORKERS='" << env << "'\n";
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

int cmd_census(unsigned length, unsigned workers, unsigned prefix_len,
               const std::string& checkpoint_dir, const std::string& out_path,
               const std::string& format, std::uint64_t checkpoint_every,
               const sicgram::SurfaceOrder& order) {
  std::signal(SIGINT, on_sigint);

  sicgram::CensusOptions opts;
  opts.workers = workers;
  opts.prefix_len = prefix_len;
  opts.checkpoint_every = checkpoint_every;
  if (!checkpoint_dir.empty()) opts.checkpoint_dir = checkpoint_dir;
  opts.cancel = &g_interrupted;
  std::atomic<std::uint64_t> progress{0};
  opts.progress = &progress;

  const auto expected = sicgram::count_classes(length, true);
  std::atomic<bool> done{false};
  std::thread reporter([&] {
    using namespace std::chrono_literals;
    auto last = std::chrono::steady_clock::now();
    while (!done.load()) {
      std::this_thread::sleep_for(100ms);
      const auto now = std::chrono::steady_clock::now();
      if (now - last >= 5s) {
        std::cerr << "progress: " << progress.load() << "/"
                  << sicgram::u128_to_string(expected) << " classes\n";
        last = now;
      }
    }
  });

  const auto t0 = std::chrono::steady_clock::now();
  sicgram::Histogram hist;
  try {
    hist = sicgram::census(length, order, opts);
  } catch (const sicgram::CensusInterrupted&) {
    done.store(true);
    reporter.join();
    if (!checkpoint_dir.empty()) {
      std::cerr << "interrupted; resume with the same --checkpoint directory: "
                << checkpoint_dir << "\n";
    } else {
      std::cerr << "interrupted; no checkpoint directory, progress discarded\n";
    }
    return kExitInterrupted;
  } catch (...) {
    done.store(true);
    reporter.join();
    throw;
  }
  done.store(true);
  reporter.join();
  const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - t0;

  const auto diag = sicgram::diagnostics(hist);
  const std::string payload = format == "json"
                                  ? sicgram::report_to_json(hist, diag, order)
                                  : sicgram::histogram_to_csv(hist);
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    write_file(out_path, payload);
  }

  std::cerr << "classes: " << hist.total() << "\n";
  std::cerr << "mean: " << diag.mean << "\n";
  std::cerr << "variance: " << diag.variance << "\n";
  if (diag.skewness) std::cerr << "skewness: " << *diag.skewness << "\n";
  std::cerr << "fit_distance: " << diag.fit_distance << "\n";
  std::cerr << "wall_time_s: " << wall.count() << "\n";
  return kExitOk;
}

int cmd_stats(const std::string& in_path) {
  const auto loaded = load_histogram(in_path);
  const auto d = sicgram::diagnostics(loaded.hist);
  nlohmann::ordered_json j;
  j["total"] = d.total;
  j["mean"] = d.mean;
  j["variance"] = d.variance;
  j["skewness"] = d.skewness ? nlohmann::ordered_json(*d.skewness)
                             : nlohmann::ordered_json(nullptr);
  j["excess_kurtosis"] = d.excess_kurtosis ? nlohmann::ordered_json(*d.excess_kurtosis)
                                           : nlohmann::ordered_json(nullptr);
  j["fit_distance"] = d.fit_distance;
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_plot(const std::string& in_path, const std::string& out_path) {
  const auto loaded = load_histogram(in_path);
  const std::string title =
      loaded.has_length
          ? "Self-intersection histogram, length " + std::to_string(loaded.hist.length)
          : "Self-intersection histogram";
  write_file(out_path, sicgram::render_histogram_svg(loaded.hist, title));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"self-intersection census of free homotopy classes on the punctured torus"};
  app.require_subcommand(1);
  std::string order_text = "abAB";
  app.add_option("--surface-order", order_text,
                 "expert: 4-letter cycle around the puncture, cut after the last "
                 "letter (validated only for abAB)")
      ->capture_default_str();

  auto* word = app.add_subcommand("word", "analyze one word");
  std::string word_text;
  word->add_option("text", word_text, "word over {a,b,A,B}")->required();

  auto* count = app.add_subcommand("count", "class counts by formula and enumeration");
  unsigned count_length = 0;
  unsigned enumerate_cap = 14;
  count->add_option("--length", count_length, "combinatorial length")
      ->required()
      ->check(CLI::Range(1u, 64u));
  count->add_option("--enumerate-cap", enumerate_cap,
                    "enumerate and cross-check up to this length")
      ->capture_default_str();

  auto* census_cmd = app.add_subcommand("census", "full census of one length");
  unsigned census_length = 0;
  unsigned workers = default_workers();
  unsigned prefix_len = 3;
  std::uint64_t checkpoint_every = sicgram::kDefaultCheckpointEvery;
  std::string checkpoint_dir, out_path, format = "csv";
  census_cmd->add_option("--length", census_length, "combinatorial length")
      ->required()
      ->check(CLI::Range(1u, 64u));
  census_cmd->add_option("--workers", workers, "worker threads (default: SICGRAM_WORKERS or cores)")
      ->check(CLI::Range(1u, 1024u));
  census_cmd->add_option("--prefix-len", prefix_len, "shard key length")
      ->capture_default_str()
      ->check(CLI::Range(0u, 16u));
  census_cmd->add_option("--checkpoint", checkpoint_dir, "checkpoint directory (resumable)");
  census_cmd->add_option("--checkpoint-every", checkpoint_every,
                         "classes between checkpoints per shard")
      ->capture_default_str();
  census_cmd->add_option("--out", out_path, "output path (default: stdout)");
  census_cmd->add_option("--format", format, "csv or json")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));

  auto* stats = app.add_subcommand("stats", "diagnostics of a stored histogram");
  std::string stats_in;
  stats->add_option("--in", stats_in, "histogram CSV or report JSON")->required();

  auto* plot = app.add_subcommand("plot", "render a histogram as SVG");
  std::string plot_in, plot_out;
  plot->add_option("--in", plot_in, "histogram CSV or report JSON")->required();
  plot->add_option("--out", plot_out, "output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitParse;
  }

  try {
    const auto order = order_from_flag(order_text);
    if (word->parsed()) return cmd_word(word_text, order);
    if (count->parsed()) return cmd_count(count_length, enumerate_cap);
    if (census_cmd->parsed())
      return cmd_census(census_length, workers, prefix_len, checkpoint_dir, out_path,
                        format, checkpoint_every, order);
    if (stats->parsed()) return cmd_stats(stats_in);
    if (plot->parsed()) return cmd_plot(plot_in, plot_out);
  } catch (const sicgram::WordParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const sicgram::CsvParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON input: " << e.what() << "\n";
    return kExitParse;
  } catch (const sicgram::NonPrimitiveError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const sicgram::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const sicgram::CheckpointMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
