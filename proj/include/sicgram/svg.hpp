#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <string>

#include "sicgram/histogram.hpp"

namespace sicgram {

namespace detail {
inline std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}
}  // namespace detail

// Deterministic monochrome bar chart: x axis is the self-intersection count
// starting at 0, y axis the class count. One <rect> per nonzero bin and no
// other rect elements, so bar counts are testable. Fixed layout keeps golden
// files stable.
inline std::string render_histogram_svg(const Histogram& h, const std::string& title) {
  if (h.bins.empty())
    throw std::invalid_argument("render_histogram_svg: empty histogram");
  constexpr double kWidth = 800, kHeight = 500;
  constexpr double kLeft = 70, kRight = 20, kTop = 50, kBottom = 45;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const std::uint32_t max_k = h.bins.rbegin()->first;
  std::uint64_t max_c = 0;
  for (const auto& [k, c] : h.bins) max_c = std::max(max_c, c);

  const double slot = plot_w / (max_k + 1);
  const double bar_w = std::max(slot * 0.9, 0.5);

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
       "viewBox=\"0 0 800 500\">\n";
  s += "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"16\">" + title + "</text>\n";
  // axes
  s += "<line x1=\"" + detail::fixed2(kLeft) + "\" y1=\"" + detail::fixed2(kTop) +
       "\" x2=\"" + detail::fixed2(kLeft) + "\" y2=\"" + detail::fixed2(kTop + plot_h) +
       "\" stroke=\"#000\" stroke-width=\"1\"/>\n";
  s += "<line x1=\"" + detail::fixed2(kLeft) + "\" y1=\"" + detail::fixed2(kTop + plot_h) +
       "\" x2=\"" + detail::fixed2(kLeft + plot_w) + "\" y2=\"" +
       detail::fixed2(kTop + plot_h) + "\" stroke=\"#000\" stroke-width=\"1\"/>\n";
  // bars
  for (const auto& [k, c] : h.bins) {
    const double x = kLeft + k * slot + (slot - bar_w) / 2;
    const double bh = plot_h * (static_cast<double>(c) / static_cast<double>(max_c));
    const double y = kTop + plot_h - bh;
    s += "<rect x=\"" + detail::fixed2(x) + "\" y=\"" + detail::fixed2(y) + "\" width=\"" +
         detail::fixed2(bar_w) + "\" height=\"" + detail::fixed2(bh) +
         "\" fill=\"#4a4a4a\"/>\n";
  }
  // x tick labels
  const std::uint32_t step = std::max<std::uint32_t>(1, (max_k + 1 + 11) / 12);
  for (std::uint32_t k = 0; k <= max_k; k += step) {
    const double x = kLeft + k * slot + slot / 2;
    s += "<text x=\"" + detail::fixed2(x) + "\" y=\"" + detail::fixed2(kTop + plot_h + 18) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
         std::to_string(k) + "</text>\n";
  }
  s += "<text x=\"" + detail::fixed2(kLeft + plot_w / 2) + "\" y=\"" +
       detail::fixed2(kHeight - 8) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
       "self-intersection count</text>\n";
  // y tick labels at 0, max/2, max
  for (int i = 0; i <= 2; ++i) {
    const std::uint64_t v = max_c * static_cast<std::uint64_t>(i) / 2;
    const double y = kTop + plot_h - plot_h * (static_cast<double>(v) / static_cast<double>(max_c));
    s += "<text x=\"" + detail::fixed2(kLeft - 6) + "\" y=\"" + detail::fixed2(y + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
         std::to_string(v) + "</text>\n";
  }
  s += "<text x=\"16\" y=\"" + detail::fixed2(kTop + plot_h / 2) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
       "transform=\"rotate(-90 16 " + detail::fixed2(kTop + plot_h / 2) + ")\">"
       "classes</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace sicgram
