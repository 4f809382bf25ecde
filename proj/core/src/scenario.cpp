#include "crvanet/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <variant>

namespace crvanet {

namespace {

// Quantity kinds accepted in scenario files. Each maps a unit suffix onto
// the field's storage unit; a bare number is taken in the storage unit.
enum class Kind {
  Time,        // s
  Length,      // m
  Speed,       // m/s
  FrequencyMhz,
  Bandwidth,   // Hz
  PowerDbw,
  Decibel,
  Temperature, // K
  Accel,       // m/s^2
  Fraction,
  Plain,
  Count,
  SchemeName,
  Seed,
};

using DoubleField = double ScenarioConfig::*;
using IntField = int ScenarioConfig::*;

struct Field {
  Kind kind;
  std::variant<std::monostate, DoubleField, IntField> member;
};

const std::map<std::string, Field, std::less<>>& field_table() {
  static const std::map<std::string, Field, std::less<>> table = {
      {"runningTime", {Kind::Time, &ScenarioConfig::runningTime}},
      {"timeStep", {Kind::Time, &ScenarioConfig::timeStep}},
      {"roadLength", {Kind::Length, &ScenarioConfig::roadLength}},
      {"nVehicles", {Kind::Count, &ScenarioConfig::nVehicles}},
      {"nChannels", {Kind::Count, &ScenarioConfig::nChannels}},
      {"nPuTowers", {Kind::Count, &ScenarioConfig::nPuTowers}},
      {"channelsPerTower", {Kind::Count, &ScenarioConfig::channelsPerTower}},
      {"towerOffset", {Kind::Length, &ScenarioConfig::towerOffset}},
      {"frequency", {Kind::FrequencyMhz, &ScenarioConfig::frequencyMhz}},
      {"baseStationHeight", {Kind::Length, &ScenarioConfig::baseStationHeight}},
      {"mobileHeight", {Kind::Length, &ScenarioConfig::mobileHeight}},
      {"sensingRange", {Kind::Length, &ScenarioConfig::sensingRange}},
      {"commRange", {Kind::Length, &ScenarioConfig::commRange}},
      {"txPowerPu", {Kind::PowerDbw, &ScenarioConfig::txPowerPu}},
      {"suSensedSnr", {Kind::Decibel, &ScenarioConfig::suSensedSnrDb}},
      {"noiseTemperature", {Kind::Temperature, &ScenarioConfig::noiseTemperature}},
      {"channelBandwidth", {Kind::Bandwidth, &ScenarioConfig::channelBandwidth}},
      {"avgSpeed", {Kind::Speed, &ScenarioConfig::avgSpeed}},
      {"fleetSpeedSpread", {Kind::Fraction, &ScenarioConfig::fleetSpeedSpread}},
      {"perVehicleSpeedDeviation", {Kind::Fraction, &ScenarioConfig::perVehicleSpeedDeviation}},
      {"reactionTime", {Kind::Time, &ScenarioConfig::reactionTime}},
      {"maxAccel", {Kind::Accel, &ScenarioConfig::maxAccel}},
      {"decel", {Kind::Accel, &ScenarioConfig::decel}},
      {"leaderDecelEstimate", {Kind::Accel, &ScenarioConfig::leaderDecelEstimate}},
      {"effectiveLength", {Kind::Length, &ScenarioConfig::effectiveLength}},
      {"humanErrorMin", {Kind::Plain, &ScenarioConfig::humanErrorMin}},
      {"humanErrorMax", {Kind::Plain, &ScenarioConfig::humanErrorMax}},
      {"backOffTime", {Kind::Time, &ScenarioConfig::backOffTime}},
      {"coordinationInterval", {Kind::Time, &ScenarioConfig::coordinationInterval}},
      {"targetPfa", {Kind::Fraction, &ScenarioConfig::targetPfa}},
      {"nSamples", {Kind::Count, &ScenarioConfig::nSamples}},
      {"scheme", {Kind::SchemeName, {}}},
      {"puHoldMean", {Kind::Time, &ScenarioConfig::puHoldMean}},
      {"puGapMean", {Kind::Time, &ScenarioConfig::puGapMean}},
      {"suHoldMean", {Kind::Time, &ScenarioConfig::suHoldMean}},
      {"suGapMean", {Kind::Time, &ScenarioConfig::suGapMean}},
      {"seed", {Kind::Seed, {}}},
  };
  return table;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Quantity {
  double number;
  std::string_view unit;
};

Quantity split_quantity(std::size_t line, std::string_view value) {
  double number = 0.0;
  const char* begin = value.data();
  const char* end = value.data() + value.size();
  if (!value.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, number);
  if (ec != std::errc{} || !std::isfinite(number)) {
    throw ConfigError(line, "expected a number, got '" + std::string(value) + "'");
  }
  return {number, trim(std::string_view(ptr, static_cast<std::size_t>(end - ptr)))};
}

[[noreturn]] void bad_unit(std::size_t line, std::string_view key, std::string_view unit) {
  throw ConfigError(line, "unit '" + std::string(unit) + "' is not valid for key '" +
                              std::string(key) + "'");
}

double convert(std::size_t line, std::string_view key, Kind kind, Quantity q) {
  const auto u = q.unit;
  const double x = q.number;
  switch (kind) {
  case Kind::Time:
    if (u.empty() || u == "s") return x;
    if (u == "ms") return x * 1e-3;
    if (u == "us") return x * 1e-6;
    if (u == "min") return x * 60.0;
    break;
  case Kind::Length:
    if (u.empty() || u == "m") return x;
    if (u == "km") return x * 1e3;
    break;
  case Kind::Speed:
    if (u.empty() || u == "m/s") return x;
    if (u == "km/h") return x / 3.6;
    break;
  case Kind::FrequencyMhz:
    if (u.empty() || u == "MHz") return x;
    if (u == "Hz") return x * 1e-6;
    if (u == "kHz") return x * 1e-3;
    if (u == "GHz") return x * 1e3;
    break;
  case Kind::Bandwidth:
    if (u.empty() || u == "Hz") return x;
    if (u == "kHz") return x * 1e3;
    if (u == "MHz") return x * 1e6;
    break;
  case Kind::PowerDbw:
    if (u.empty() || u == "dBW") return x;
    if (u == "dBm") return x - 30.0;
    if (u == "W") {
      if (x <= 0.0) throw ConfigError(line, "power in W must be positive");
      return 10.0 * std::log10(x);
    }
    break;
  case Kind::Decibel:
    if (u.empty() || u == "dB") return x;
    break;
  case Kind::Temperature:
    if (u.empty() || u == "K") return x;
    break;
  case Kind::Accel:
    if (u.empty() || u == "m/s^2" || u == "m/s2") return x;
    break;
  case Kind::Fraction:
    if (u.empty()) return x;
    if (u == "%") return x / 100.0;
    break;
  case Kind::Plain:
    if (u.empty()) return x;
    break;
  default:
    break;
  }
  bad_unit(line, key, u);
}

void apply(ScenarioConfig& cfg, std::size_t line, std::string_view key, std::string_view value) {
  const auto& table = field_table();
  const auto it = table.find(key);
  if (it == table.end()) {
    throw ConfigError(line, "unknown key '" + std::string(key) + "'");
  }
  const Field& field = it->second;

  if (field.kind == Kind::SchemeName) {
    try {
      cfg.scheme = parse_scheme(value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(line, e.what());
    }
    return;
  }
  if (field.kind == Kind::Seed) {
    std::uint64_t seed = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), seed);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
      throw ConfigError(line, "seed must be a non-negative integer");
    }
    cfg.seed = seed;
    return;
  }
  if (field.kind == Kind::Count) {
    const Quantity q = split_quantity(line, value);
    if (!q.unit.empty()) bad_unit(line, key, q.unit);
    if (q.number != std::floor(q.number) || q.number < 0 || q.number > 1e9) {
      throw ConfigError(line, "'" + std::string(key) + "' must be a non-negative integer");
    }
    cfg.*std::get<IntField>(field.member) = static_cast<int>(q.number);
    return;
  }
  cfg.*std::get<DoubleField>(field.member) = convert(line, key, field.kind, split_quantity(line, value));
}

void require(bool ok, const char* invariant) {
  if (!ok) throw ValidationError(std::string("invariant violated: ") + invariant);
}

} // namespace

ConfigError::ConfigError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
  case Scheme::Standalone: return "standalone";
  case Scheme::Cooperative: return "cooperative";
  case Scheme::Proposed: return "proposed";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "standalone") return Scheme::Standalone;
  if (name == "cooperative") return Scheme::Cooperative;
  if (name == "proposed") return Scheme::Proposed;
  throw std::invalid_argument("unknown scheme '" + std::string(name) +
                              "' (expected standalone, cooperative or proposed)");
}

ScenarioConfig default_scenario() { return ScenarioConfig{}; }

void validate(const ScenarioConfig& c) {
  require(c.timeStep > 0.0, "timeStep > 0");
  require(c.runningTime >= c.timeStep, "runningTime >= timeStep");
  require(c.roadLength > 0.0, "roadLength > 0");
  require(c.nVehicles >= 0, "nVehicles >= 0");
  require(c.nPuTowers >= 1, "nPuTowers >= 1");
  require(c.channelsPerTower >= 1, "channelsPerTower >= 1");
  require(c.nChannels == c.nPuTowers * c.channelsPerTower,
          "nChannels = nPuTowers x channelsPerTower");
  require(c.targetPfa > 0.0 && c.targetPfa < 1.0, "0 < targetPfa < 1");
  require(c.fleetSpeedSpread >= 0.0 && c.fleetSpeedSpread < 1.0, "0 <= fleetSpeedSpread < 1");
  require(c.perVehicleSpeedDeviation >= 0.0 && c.perVehicleSpeedDeviation < 1.0,
          "0 <= perVehicleSpeedDeviation < 1");
  require(c.commRange > 0.0, "commRange > 0");
  require(c.sensingRange >= c.commRange, "sensingRange >= commRange");
  require(c.towerOffset > 0.0, "towerOffset > 0");
  require(c.frequencyMhz >= 150.0 && c.frequencyMhz <= 1500.0, "150 <= frequency <= 1500 MHz");
  require(c.baseStationHeight >= 30.0 && c.baseStationHeight <= 200.0,
          "30 <= baseStationHeight <= 200 m");
  require(c.mobileHeight >= 1.0 && c.mobileHeight <= 10.0, "1 <= mobileHeight <= 10 m");
  require(c.noiseTemperature > 0.0, "noiseTemperature > 0");
  require(c.channelBandwidth > 0.0, "channelBandwidth > 0");
  require(c.avgSpeed > 0.0, "avgSpeed > 0");
  require(c.reactionTime > 0.0, "reactionTime > 0");
  require(c.maxAccel > 0.0, "maxAccel > 0");
  require(c.decel > 0.0, "decel > 0");
  require(c.leaderDecelEstimate > 0.0, "leaderDecelEstimate > 0");
  require(c.effectiveLength >= 0.0, "effectiveLength >= 0");
  require(c.humanErrorMin >= 0.0 && c.humanErrorMin <= c.humanErrorMax,
          "0 <= humanErrorMin <= humanErrorMax");
  require(c.backOffTime > 0.0, "backOffTime > 0");
  require(c.coordinationInterval > 0.0, "coordinationInterval > 0");
  require(c.nSamples >= 50, "nSamples >= 50");
  require(c.puHoldMean > 0.0 && c.puGapMean > 0.0, "PU hold/gap means > 0");
  require(c.suHoldMean > 0.0 && c.suGapMean > 0.0, "SU hold/gap means > 0");
}

ScenarioConfig load_scenario(std::string_view text) {
  ScenarioConfig cfg = default_scenario();
  std::size_t lineNo = 0;
  while (!text.empty()) {
    ++lineNo;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(lineNo, "expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(lineNo, "missing key");
    if (value.empty()) throw ConfigError(lineNo, "missing value for '" + std::string(key) + "'");
    apply(cfg, lineNo, key, value);
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open scenario file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_scenario(buffer.str());
}

std::string to_scenario_text(const ScenarioConfig& c) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& [key, field] : field_table()) {
    out << key << " = ";
    if (field.kind == Kind::SchemeName) {
      out << to_string(c.scheme);
    } else if (field.kind == Kind::Seed) {
      out << c.seed;
    } else if (const auto* d = std::get_if<DoubleField>(&field.member)) {
      out << c.**d;
    } else {
      out << c.*std::get<IntField>(field.member);
    }
    out << '\n';
  }
  return out.str();
}

Tick num_time_slices(double runningTime, double timeStep) {
  if (!(runningTime > 0.0) || !(timeStep > 0.0)) {
    throw std::invalid_argument("runningTime and timeStep must be positive");
  }
  const double ratio = runningTime / timeStep;
  auto slices = static_cast<Tick>(std::floor(ratio));
  // 1.0 / 0.001 may land a hair under 1000 in binary floating point
  if (ratio - static_cast<double>(slices) > 1.0 - 1e-9) ++slices;
  return slices;
}

Tick duration_to_ticks(double seconds, double timeStep) {
  return std::max<Tick>(1, std::llround(seconds / timeStep));
}

} // namespace crvanet
