#include "crvanet/sweep.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "crvanet/simulation.hpp"

namespace crvanet {

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
  case SweepAxis::Vehicles: return "vehicles";
  case SweepAxis::Channels: return "channels";
  case SweepAxis::Speed: return "speed";
  }
  return "unknown";
}

SweepAxis parse_axis(std::string_view name) {
  if (name == "vehicles") return SweepAxis::Vehicles;
  if (name == "channels") return SweepAxis::Channels;
  if (name == "speed") return SweepAxis::Speed;
  throw std::invalid_argument("unknown sweep axis '" + std::string(name) + "'");
}

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

bool integral(double x) { return std::isfinite(x) && x == std::floor(x); }

} // namespace

void SweepSpec::validate() const {
  if (values.empty()) throw ValidationError("sweep needs at least one axis value");
  if (schemes.empty()) throw ValidationError("sweep needs at least one scheme");
  if (seeds < 1) throw ValidationError("sweep needs at least one seed");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) throw ValidationError("axis values must be strictly increasing");
  }
  for (const double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError("axis value " + format_number(v) + " must be positive");
    }
    if (axis != SweepAxis::Speed && !integral(v)) {
      throw ValidationError("axis value " + format_number(v) + " must be a whole number");
    }
    if (axis == SweepAxis::Channels &&
        static_cast<long long>(v) % base.nPuTowers != 0) {
      throw ValidationError("channel count " + format_number(v) + " is not divisible by " +
                            std::to_string(base.nPuTowers) + " towers");
    }
  }
  for (const double v : values) crvanet::validate(sweep_point_config(*this, v, schemes.front(), 1));
}

ScenarioConfig sweep_point_config(const SweepSpec& spec, double value, Scheme scheme,
                                  std::uint64_t seed) {
  ScenarioConfig c = spec.base;
  switch (spec.axis) {
  case SweepAxis::Vehicles: c.nVehicles = static_cast<int>(value); break;
  case SweepAxis::Channels:
    c.nChannels = static_cast<int>(value);
    c.channelsPerTower = c.nChannels / c.nPuTowers;
    break;
  case SweepAxis::Speed: c.avgSpeed = value / 3.6; break;
  }
  c.scheme = scheme;
  c.seed = seed;
  return c;
}

int sweep_jobs(int fallback) {
  const char* env = std::getenv(kJobsEnv);
  if (env == nullptr || *env == '\0') return fallback < 1 ? 1 : fallback;
  int jobs = 0;
  const std::string_view text(env);
  const auto res = std::from_chars(text.data(), text.data() + text.size(), jobs);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || jobs < 1) {
    throw std::invalid_argument(std::string(kJobsEnv) + " must be a positive integer, got '" +
                                std::string(text) + "'");
  }
  return jobs;
}

std::vector<DetailedRun> run_sweep_detailed(const SweepSpec& spec, int jobs) {
  spec.validate();
  std::vector<DetailedRun> runs;
  for (const double value : spec.values) {
    for (const Scheme scheme : spec.schemes) {
      for (int s = 1; s <= spec.seeds; ++s) {
        DetailedRun r;
        r.row.axisValue = value;
        r.row.scheme = scheme;
        r.row.seed = static_cast<std::uint64_t>(s);
        runs.push_back(std::move(r));
      }
    }
  }

  if (jobs <= 0) jobs = sweep_jobs(static_cast<int>(spec.values.size()));
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), runs.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failureMutex;
  auto work = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      try {
        DetailedRun& r = runs[i];
        r.report = run_simulation(sweep_point_config(spec, r.row.axisValue, r.row.scheme, r.row.seed));
        r.row.allocations = r.report.allocations;
        r.row.falseAlarms = r.report.falseAlarms;
        r.row.misdetections = r.report.misdetections;
        r.row.sensingEvents = r.report.sensingEvents;
      } catch (const std::exception& e) {
        const SweepRow& row = runs[i].row;
        std::lock_guard lock(failureMutex);
        if (!failure) {
          failure = std::make_exception_ptr(std::runtime_error(
              "run (" + std::string(to_string(spec.axis)) + "=" + format_number(row.axisValue) +
              ", " + std::string(to_string(row.scheme)) + ", seed " + std::to_string(row.seed) +
              ") failed: " + e.what()));
        }
        next = runs.size();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return runs;
}

SweepTable run_sweep(const SweepSpec& spec, int jobs) {
  SweepTable table;
  table.axis = spec.axis;
  for (DetailedRun& r : run_sweep_detailed(spec, jobs)) table.rows.push_back(r.row);
  return table;
}

void write_csv(std::ostream& out, const SweepTable& table) {
  out << "axis_value,scheme,seed,allocations,false_alarms,misdetections,sensing_events\n";
  for (const SweepRow& r : table.rows) {
    out << format_number(r.axisValue) << ',' << to_string(r.scheme) << ',' << r.seed << ','
        << r.allocations << ',' << r.falseAlarms << ',' << r.misdetections << ','
        << r.sensingEvents << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const SweepTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_csv(out, table);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

SweepTable read_csv(std::istream& in, SweepAxis axis) {
  SweepTable table;
  table.axis = axis;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty sweep csv");
  std::size_t lineNo = 1;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != 7) {
      throw std::runtime_error("sweep csv line " + std::to_string(lineNo) + ": expected 7 columns");
    }
    SweepRow r;
    r.axisValue = std::stod(cells[0]);
    r.scheme = parse_scheme(cells[1]);
    r.seed = std::stoull(cells[2]);
    r.allocations = std::stoll(cells[3]);
    r.falseAlarms = std::stoll(cells[4]);
    r.misdetections = std::stoll(cells[5]);
    r.sensingEvents = std::stoll(cells[6]);
    table.rows.push_back(r);
  }
  return table;
}

} // namespace crvanet
