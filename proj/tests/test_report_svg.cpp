#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "sicgram/census.hpp"
#include "sicgram/histogram.hpp"
#include "sicgram/report.hpp"
#include "sicgram/svg.hpp"

using namespace sicgram;

namespace {
std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size()))
    ++n;
  return n;
}
}  // namespace

TEST_CASE("histogram csv: exact bytes and parsing") {
  const Histogram h{1, {{0, 4}}};
  CHECK(histogram_to_csv(h) == "sic,count\n0,4\n");
  CHECK(histogram_to_csv(Histogram{3, {}}) == "sic,count\n");

  const Histogram multi{6, {{0, 8}, {2, 8}, {7, 28}}};
  const auto csv = histogram_to_csv(multi);
  CHECK(csv == "sic,count\n0,8\n2,8\n7,28\n");
  const auto parsed = histogram_from_csv(csv);
  CHECK(parsed.bins == multi.bins);

  CHECK_THROWS_AS(histogram_from_csv(""), CsvParseError);
  CHECK_THROWS_AS(histogram_from_csv("k,v\n0,1\n"), CsvParseError);
  CHECK_THROWS_AS(histogram_from_csv("sic,count\n0\n"), CsvParseError);
  CHECK_THROWS_AS(histogram_from_csv("sic,count\n0,x\n"), CsvParseError);
  CHECK_THROWS_AS(histogram_from_csv("sic,count\n2,1\n1,1\n"), CsvParseError);
}

TEST_CASE("report json: schema fields and round trip") {
  const SurfaceOrder order;
  CensusOptions o;
  o.workers = 2;
  const auto h = census(4, order, o);
  const auto d = diagnostics(h);
  const auto text = report_to_json(h, d, order);
  CHECK(text.find("\"length\": 4") != std::string::npos);
  CHECK(text.find("\"cycle\": \"abAB\"") != std::string::npos);
  CHECK(text.find("\"root_cut\": \"B\"") != std::string::npos);
  CHECK(text.find("\"engine_version\": \"1.0.0\"") != std::string::npos);
  CHECK(text.find("\"fit_distance\"") != std::string::npos);

  const auto parsed = report_from_json(text);
  CHECK(parsed.hist == h);
  CHECK(parsed.order == order);
  CHECK(parsed.engine_version == kEngineVersion);
  // import/export is the identity on report bytes
  CHECK(report_to_json(parsed.hist, diagnostics(parsed.hist), parsed.order) == text);
}

TEST_CASE("report json: degenerate diagnostics serialize as null") {
  const Histogram h{1, {{0, 4}}};
  const auto text = report_to_json(h, diagnostics(h), SurfaceOrder{});
  CHECK(text.find("\"skewness\": null") != std::string::npos);
  CHECK(text.find("\"excess_kurtosis\": null") != std::string::npos);
  const auto parsed = report_from_json(text);
  CHECK(parsed.hist == h);
}

TEST_CASE("svg: one rect per nonzero bin, deterministic bytes") {
  const Histogram single{1, {{0, 4}}};
  const auto svg1 = render_histogram_svg(single, "t");
  CHECK(count_occurrences(svg1, "<rect") == 1);
  CHECK(svg1.find("<svg xmlns=") == 0);
  CHECK(svg1.find("</svg>") != std::string::npos);

  const Histogram h{6, {{0, 8}, {2, 8}, {3, 16}, {4, 24}, {5, 16}, {6, 16}, {7, 28}}};
  const auto svg = render_histogram_svg(h, "length 6");
  CHECK(count_occurrences(svg, "<rect") == h.bins.size());
  CHECK(svg == render_histogram_svg(h, "length 6"));  // idempotent

  CHECK_THROWS_AS(render_histogram_svg(Histogram{}, "x"), std::invalid_argument);
}
