#pragma once

#include <string>

#include "empower/bench.hpp"

namespace empower::bench {

struct PlotOptions {
  std::string title;
  std::string x_label = "forward calls (fraction of exhaustive search)";
  std::string y_label;
  double y_min = 0.0;
  double y_max = 1.0;
};

/// Line chart of every variant column against a log-scaled key axis.
std::string render_svg(const SeriesTable& table, const PlotOptions& options);

}  // namespace empower::bench
