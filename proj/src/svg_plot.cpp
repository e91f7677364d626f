#include "empower/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace empower::bench {

namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 500;
constexpr double kLeft = 70;
constexpr double kRight = 190;
constexpr double kTop = 40;
constexpr double kBottom = 60;

constexpr std::array<const char*, kVariantCount> kColours{
    "#000000", "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const SeriesTable& table, const PlotOptions& options) {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (double k : table.keys) {
    if (k <= 0) continue;
    lo = std::min(lo, std::log10(k));
    hi = std::max(hi, std::log10(k));
  }
  if (!(lo <= hi)) lo = hi = 0;
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double y_span = options.y_max - options.y_min;
  auto px = [&](double key) { return kLeft + (std::log10(key) - lo) / (hi - lo) * plot_w; };
  auto py = [&](double v) {
    return kTop + plot_h - (std::clamp(v, options.y_min, options.y_max) - options.y_min) / y_span * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"20\" text-anchor=\"middle\">"
      << escape(options.title) << "</text>\n";
  svg << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(plot_w)
      << "\" height=\"" << num(plot_h) << "\" fill=\"none\" stroke=\"#444\"/>\n";

  for (int i = 0; i <= 5; ++i) {
    const double v = options.y_min + y_span * i / 5.0;
    svg << "<line x1=\"" << num(kLeft) << "\" x2=\"" << num(kLeft + plot_w) << "\" y1=\""
        << num(py(v)) << "\" y2=\"" << num(py(v))
        << "\" stroke=\"#ccc\" stroke-dasharray=\"4 3\"/>\n";
    svg << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py(v) + 4)
        << "\" text-anchor=\"end\">" << num(v) << "</text>\n";
  }
  for (double k : table.keys) {
    if (k <= 0) continue;
    char label[32];
    std::snprintf(label, sizeof label, "%g", k);
    svg << "<text x=\"" << num(px(k)) << "\" y=\"" << num(kTop + plot_h + 16)
        << "\" text-anchor=\"middle\">" << label << "</text>\n";
  }
  svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 15)
      << "\" text-anchor=\"middle\">" << escape(options.x_label) << "</text>\n";
  svg << "<text transform=\"translate(18," << num(kTop + plot_h / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(options.y_label) << "</text>\n";

  for (std::size_t v = 0; v < kVariantCount; ++v) {
    const auto& column = table.values[v];
    if (column.empty()) continue;
    svg << "<polyline fill=\"none\" stroke=\"" << kColours[v] << "\" stroke-width=\""
        << (v == 0 ? 2.5 : 1.5) << "\" points=\"";
    for (std::size_t row = 0; row < column.size() && row < table.keys.size(); ++row) {
      if (table.keys[row] <= 0) continue;
      svg << num(px(table.keys[row])) << ',' << num(py(column[row])) << ' ';
    }
    svg << "\"/>\n";
    const double ly = kTop + 14 + 18.0 * static_cast<double>(v);
    svg << "<line x1=\"" << num(kWidth - kRight + 15) << "\" x2=\"" << num(kWidth - kRight + 40)
        << "\" y1=\"" << num(ly - 4) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << kColours[v]
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << num(kWidth - kRight + 46) << "\" y=\"" << num(ly) << "\">"
        << variant_name(static_cast<Variant>(v)) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace empower::bench
