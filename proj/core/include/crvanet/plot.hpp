#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "crvanet/sweep.hpp"

namespace crvanet {

enum class Metric { Allocations, FalseAlarms, Misdetections };

std::string_view to_string(Metric metric); // "allocations", "false_alarms", "misdetections"

/// Seed statistics of one metric at one (scheme, axis value).
struct SeriesPoint {
  double x = 0.0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct Series {
  Scheme scheme = Scheme::Proposed;
  std::vector<SeriesPoint> points; // ascending x
};

std::vector<Series> summarize(const SweepTable& table, Metric metric);

/// Line chart (seed mean with min/max whiskers, one line per scheme) as SVG.
std::string render_svg(const SweepTable& table, Metric metric);

/// Writes fig_<axis>_<metric>.svg for every metric into `dir` and returns the
/// paths. Needs at least two distinct axis values.
std::vector<std::filesystem::path> render_plots(const SweepTable& table,
                                                const std::filesystem::path& dir);

} // namespace crvanet
