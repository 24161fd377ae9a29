#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sicgram/histogram.hpp"
#include "sicgram/letter.hpp"
#include "sicgram/report.hpp"
#include "sicgram/surface.hpp"
#include "sicgram/word.hpp"

namespace sicgram {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckpointMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One shard of a census: the canonical representatives of length `length`
// starting with `prefix`. Shards of a fixed prefix length partition the
// class set.
struct ShardSpec {
  std::uint32_t length = 0;
  std::vector<Letter> prefix;

  [[nodiscard]] std::size_t prefix_len() const { return prefix.size(); }
  friend bool operator==(const ShardSpec&, const ShardSpec&) = default;
};

// Resumable shard state. Resuming and running to completion yields the
// identical histogram as an uninterrupted run. Counts are not comparable
// across engine versions, hence the version stamp.
struct Checkpoint {
  ShardSpec shard;
  std::vector<Letter> last_emitted;  // empty: nothing processed yet
  Histogram partial;
  std::string engine_version;
  SurfaceOrder order;
};

inline std::string checkpoint_filename(const ShardSpec& spec) {
  return "shard-" + format_word(spec.prefix) + ".ckpt.json";
}

inline std::string checkpoint_to_json(const Checkpoint& ckpt) {
  nlohmann::ordered_json j;
  j["shard"] = {{"length", ckpt.shard.length},
                {"prefix", format_word(ckpt.shard.prefix)},
                {"prefix_len", ckpt.shard.prefix.size()}};
  j["last_emitted"] = format_word(ckpt.last_emitted);
  j["partial"] = {{"bins", detail::bins_to_json(ckpt.partial)}};
  j["engine_version"] = ckpt.engine_version;
  j["order"] = order_to_json(ckpt.order);
  return j.dump(2) + "\n";
}

inline Checkpoint checkpoint_from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  Checkpoint c;
  c.shard.length = j.at("shard").at("length").get<std::uint32_t>();
  c.shard.prefix = parse_word(j.at("shard").at("prefix").get<std::string>());
  c.last_emitted = parse_word(j.at("last_emitted").get<std::string>());
  c.partial.length = c.shard.length;
  detail::bins_from_json(j.at("partial").at("bins"), c.partial);
  c.engine_version = j.at("engine_version").get<std::string>();
  c.order = order_from_json(j.at("order"));
  return c;
}

// Atomic write: temp file in the same directory, then rename.
inline void save_checkpoint(const std::filesystem::path& dir, const Checkpoint& ckpt) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto path = dir / checkpoint_filename(ckpt.shard);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << checkpoint_to_json(ckpt);
    if (!out.good()) throw IoError("cannot write checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename checkpoint into place: " + path.string());
}

inline std::optional<Checkpoint> load_checkpoint(const std::filesystem::path& dir,
                                                 const ShardSpec& spec) {
  const auto path = dir / checkpoint_filename(spec);
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (!in.good() && !in.eof()) throw IoError("cannot read checkpoint " + path.string());
  return checkpoint_from_json(ss.str());
}

}  // namespace sicgram
