#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "crvanet/report.hpp"
#include "crvanet/scenario.hpp"

namespace crvanet {

enum class SweepAxis { Vehicles, Channels, Speed };

std::string_view to_string(SweepAxis axis);
SweepAxis parse_axis(std::string_view name);

/// Environment variable holding the worker count of a sweep.
inline constexpr const char* kJobsEnv = "CRVANET_JOBS";

struct SweepSpec {
  ScenarioConfig base;
  SweepAxis axis = SweepAxis::Vehicles;
  std::vector<double> values; // vehicles: count, channels: total count, speed: km/h
  std::vector<Scheme> schemes;
  int seeds = 5;              // runs use seeds 1..seeds

  /// Throws ValidationError when empty, not strictly increasing, non-integral
  /// or non-divisible.
  void validate() const;
};

/// Base config with the axis value, scheme and seed applied.
ScenarioConfig sweep_point_config(const SweepSpec& spec, double value, Scheme scheme,
                                  std::uint64_t seed);

struct SweepRow {
  double axisValue = 0.0;
  Scheme scheme = Scheme::Proposed;
  std::uint64_t seed = 1;
  std::int64_t allocations = 0;
  std::int64_t falseAlarms = 0;
  std::int64_t misdetections = 0;
  std::int64_t sensingEvents = 0;

  bool operator==(const SweepRow&) const = default;
};

struct SweepTable {
  SweepAxis axis = SweepAxis::Vehicles;
  std::vector<SweepRow> rows; // value-major, then the given scheme order, then seed

  bool operator==(const SweepTable&) const = default;
};

struct DetailedRun {
  SweepRow row;
  SimulationReport report;
};

/// Worker count from CRVANET_JOBS, else `fallback`. Throws on junk.
int sweep_jobs(int fallback);

/// Runs every (value, scheme, seed) point on `jobs` threads (<= 0 means
/// sweep_jobs(number of axis values)). Output order never depends on jobs.
/// The first failing run aborts the sweep; the error names its triple.
std::vector<DetailedRun> run_sweep_detailed(const SweepSpec& spec, int jobs = 0);
SweepTable run_sweep(const SweepSpec& spec, int jobs = 0);

/// Header `axis_value,scheme,seed,allocations,false_alarms,misdetections,sensing_events`.
void write_csv(std::ostream& out, const SweepTable& table);
void write_csv(const std::filesystem::path& path, const SweepTable& table);
SweepTable read_csv(std::istream& in, SweepAxis axis);

/// Shortest round-trip text of a double.
std::string format_number(double value);

} // namespace crvanet
