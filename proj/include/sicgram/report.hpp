#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sicgram/histogram.hpp"
#include "sicgram/letter.hpp"
#include "sicgram/surface.hpp"

namespace sicgram {

inline constexpr std::string_view kEngineVersion = "1.0.0";

struct CsvParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Histogram CSV: header `sic,count`, one `k,count` row per nonzero bin in
// ascending k, LF endings, ASCII decimal.
inline std::string histogram_to_csv(const Histogram& h) {
  std::string out = "sic,count\n";
  for (const auto& [k, c] : h.bins) {
    out += std::to_string(k);
    out += ',';
    out += std::to_string(c);
    out += '\n';
  }
  return out;
}

namespace detail {
inline std::uint64_t parse_u64(std::string_view field, std::size_t line_no) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || p != field.data() + field.size())
    throw CsvParseError("histogram csv: bad number on line " + std::to_string(line_no));
  return v;
}
}  // namespace detail

// Parses a histogram CSV. The length is not part of the format and is left 0.
inline Histogram histogram_from_csv(std::string_view text) {
  Histogram h;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  long long prev_k = -1;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line_no == 1) {
      if (line != "sic,count")
        throw CsvParseError("histogram csv: expected header 'sic,count'");
      continue;
    }
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos)
      throw CsvParseError("histogram csv: missing comma on line " + std::to_string(line_no));
    const auto k = detail::parse_u64(line.substr(0, comma), line_no);
    const auto c = detail::parse_u64(line.substr(comma + 1), line_no);
    if (static_cast<long long>(k) <= prev_k)
      throw CsvParseError("histogram csv: keys not strictly ascending on line " +
                          std::to_string(line_no));
    prev_k = static_cast<long long>(k);
    h.add(static_cast<std::uint32_t>(k), c);
  }
  if (line_no == 0) throw CsvParseError("histogram csv: empty input");
  return h;
}

inline nlohmann::ordered_json order_to_json(const SurfaceOrder& order) {
  return {{"cycle", order.cycle_text()},
          {"root_cut", std::string(1, order.root_cut().to_char())}};
}

inline SurfaceOrder order_from_json(const nlohmann::json& j) {
  const auto cycle = j.at("cycle").get<std::string>();
  const auto root = j.at("root_cut").get<std::string>();
  if (cycle.size() != 4 || root.size() != 1)
    throw std::invalid_argument("surface order json: bad cycle or root_cut");
  std::array<Letter, 4> c{};
  for (std::size_t i = 0; i < 4; ++i) {
    auto l = letter_from_char(cycle[i]);
    if (!l) throw std::invalid_argument("surface order json: invalid letter");
    c[i] = *l;
  }
  auto r = letter_from_char(root[0]);
  if (!r) throw std::invalid_argument("surface order json: invalid root_cut");
  return SurfaceOrder(c, *r);
}

namespace detail {
inline nlohmann::ordered_json bins_to_json(const Histogram& h) {
  auto bins = nlohmann::ordered_json::array();
  for (const auto& [k, c] : h.bins) bins.push_back({k, c});
  return bins;
}

inline void bins_from_json(const nlohmann::json& j, Histogram& h) {
  for (const auto& kv : j) {
    if (!kv.is_array() || kv.size() != 2)
      throw std::invalid_argument("histogram json: bins entries must be [k, count]");
    h.add(kv[0].get<std::uint32_t>(), kv[1].get<std::uint64_t>());
  }
}

inline nlohmann::ordered_json opt_to_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}
}  // namespace detail

// Census report: {length, order, engine_version, bins, diagnostics}.
inline std::string report_to_json(const Histogram& h, const DistributionDiagnostics& d,
                                  const SurfaceOrder& order) {
  nlohmann::ordered_json j;
  j["length"] = h.length;
  j["order"] = order_to_json(order);
  j["engine_version"] = std::string(kEngineVersion);
  j["bins"] = detail::bins_to_json(h);
  j["diagnostics"] = {{"total", d.total},
                      {"mean", d.mean},
                      {"variance", d.variance},
                      {"skewness", detail::opt_to_json(d.skewness)},
                      {"excess_kurtosis", detail::opt_to_json(d.excess_kurtosis)},
                      {"fit_distance", d.fit_distance}};
  return j.dump(2) + "\n";
}

struct ParsedReport {
  Histogram hist;
  SurfaceOrder order;
  std::string engine_version;
};

inline ParsedReport report_from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  ParsedReport r;
  r.hist.length = j.at("length").get<std::uint32_t>();
  r.order = order_from_json(j.at("order"));
  r.engine_version = j.at("engine_version").get<std::string>();
  detail::bins_from_json(j.at("bins"), r.hist);
  return r;
}

}  // namespace sicgram
