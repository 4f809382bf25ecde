#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace crvanet {

/// Discrete simulation time, counted in whole time slices.
using Tick = std::int64_t;

enum class Scheme { Standalone, Cooperative, Proposed };

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view name);

/// Raised when scenario text cannot be parsed. Carries the 1-based line.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Raised when a parsed configuration violates an invariant.
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Every simulation parameter, stored in SI units (seconds, meters, m/s,
/// hertz, kelvin) except where the field name says otherwise.
struct ScenarioConfig {
  // clock
  double runningTime = 10.0;
  double timeStep = 0.001;

  // geometry
  double roadLength = 2000.0;
  int nVehicles = 50;
  int nChannels = 100;
  int nPuTowers = 2;
  int channelsPerTower = 50;
  double towerOffset = 10000.0;

  // radio
  double frequencyMhz = 150.0;
  double baseStationHeight = 50.0;
  double mobileHeight = 1.5;
  double sensingRange = 400.0;
  double commRange = 240.0;
  double txPowerPu = 20.0;     // dBW
  double suSensedSnrDb = 20.0; // SU signal seen by a detector inside sensingRange
  double noiseTemperature = 500.0;
  double channelBandwidth = 7.0e6;

  // mobility
  double avgSpeed = 100.0 / 3.6;
  double fleetSpeedSpread = 0.2;
  double perVehicleSpeedDeviation = 0.1;
  double reactionTime = 1.0;
  double maxAccel = 1.7;
  double decel = 3.0;
  double leaderDecelEstimate = 3.0;
  double effectiveLength = 6.5;
  double humanErrorMin = 0.25;
  double humanErrorMax = 0.4;

  // spectrum access
  double backOffTime = 0.010;
  double coordinationInterval = 0.020;
  double targetPfa = 0.1;
  int nSamples = 100;
  Scheme scheme = Scheme::Proposed;
  double puHoldMean = 0.100;
  double puGapMean = 0.100;
  double suHoldMean = 0.050;
  double suGapMean = 0.050;

  std::uint64_t seed = 1;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Defaults matching the reference highway scenario.
ScenarioConfig default_scenario();

/// Throws ValidationError naming the first violated invariant.
void validate(const ScenarioConfig& config);

/// Parses `key = value` lines on top of default_scenario(). Values may carry
/// units ("100 km/h", "2 km", "10 ms", "150 MHz"). Unknown keys are errors.
ScenarioConfig load_scenario(std::string_view text);
ScenarioConfig load_scenario_file(const std::filesystem::path& path);

/// Serialises a config back to loadable text (SI units).
std::string to_scenario_text(const ScenarioConfig& config);

/// floor(runningTime / timeStep). Throws std::invalid_argument unless both
/// are positive.
Tick num_time_slices(double runningTime, double timeStep);

/// Nearest whole number of ticks for a fixed duration, at least one.
Tick duration_to_ticks(double seconds, double timeStep);

} // namespace crvanet
