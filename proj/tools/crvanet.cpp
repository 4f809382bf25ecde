// crvanet: command-line front end for single runs and parameter sweeps.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crvanet/plot.hpp"
#include "crvanet/simulation.hpp"
#include "crvanet/sweep.hpp"

namespace {

// a failure tagged with the pipeline stage it happened in
struct StageError {
  std::string stage;
  std::string message;
};

template <typename F>
auto stage(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::exception& e) {
    throw StageError{name, e.what()};
  }
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (const char ch : text) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_value(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad axis value '" + s + "'");
  }
  return v;
}

int simulate(const std::string& configPath, std::optional<std::uint64_t> seed,
             const std::string& tracePath) {
  crvanet::ScenarioConfig config =
      stage("config", [&] { return crvanet::load_scenario_file(configPath); });
  if (seed) config.seed = *seed;
  stage("validate", [&] { crvanet::validate(config); });

  crvanet::RunOptions options;
  options.trace = !tracePath.empty();
  const crvanet::SimulationReport report =
      stage("simulate", [&] { return crvanet::run_simulation(config, options); });

  if (!tracePath.empty()) {
    stage("trace", [&] {
      std::ofstream out(tracePath, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open " + tracePath);
      crvanet::write_trace_csv(out, report.trace, config.timeStep);
      if (!out) throw std::runtime_error("failed writing " + tracePath);
    });
  }

  std::cout << "scheme " << crvanet::to_string(config.scheme) << ", seed " << config.seed << '\n'
            << "allocations     " << report.allocations << '\n'
            << "false_alarms    " << report.falseAlarms << '\n'
            << "misdetections   " << report.misdetections << '\n'
            << "correct         " << report.correctDetections << '\n'
            << "sensing_events  " << report.sensingEvents << '\n'
            << "interfering     " << report.interferingAllocations << '\n'
            << "preemptions     " << report.preemptions << '\n'
            << "backoffs        " << report.backoffs << '\n';
  return 0;
}

int sweep(const std::string& configPath, const std::string& axis, const std::string& values,
          const std::string& schemes, int seeds, const std::string& outDir) {
  crvanet::SweepSpec spec;
  stage("config", [&] {
    spec.base = crvanet::load_scenario_file(configPath);
    spec.axis = crvanet::parse_axis(axis);
    spec.values.clear();
    for (const std::string& v : split(values)) spec.values.push_back(parse_value(v));
    for (const std::string& s : split(schemes)) spec.schemes.push_back(crvanet::parse_scheme(s));
    spec.seeds = seeds;
  });
  stage("validate", [&] { spec.validate(); });

  const crvanet::SweepTable table = stage("simulate", [&] { return crvanet::run_sweep(spec); });

  const std::filesystem::path dir(outDir);
  stage("write", [&] {
    std::filesystem::create_directories(dir);
    crvanet::write_csv(dir / "sweep.csv", table);
  });
  if (spec.values.size() >= 2) {
    stage("plot", [&] { crvanet::render_plots(table, dir); });
  } else {
    std::cerr << "note: one axis value, no figures written\n";
  }
  std::cout << "wrote " << table.rows.size() << " rows to " << (dir / "sweep.csv").string() << '\n';
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectrum sharing simulator for cognitive radio vehicular networks"};
  app.require_subcommand(1);

  std::string configPath;
  std::optional<std::uint64_t> seed;
  std::string tracePath;
  auto* sim = app.add_subcommand("simulate", "Run one scenario and print its counters");
  sim->add_option("--config", configPath, "Scenario file")->required()->check(CLI::ExistingFile);
  sim->add_option("--seed", seed, "Override the scenario seed");
  sim->add_option("--trace", tracePath, "Write the event trace as CSV");

  std::string sweepConfig, axis, values, schemes = "standalone,cooperative,proposed", outDir;
  int seeds = 5;
  auto* sw = app.add_subcommand("sweep", "Sweep one parameter across schemes and seeds");
  sw->add_option("--config", sweepConfig, "Base scenario file")->required()->check(CLI::ExistingFile);
  sw->add_option("--axis", axis, "vehicles | channels | speed")
      ->required()
      ->check(CLI::IsMember({"vehicles", "channels", "speed"}));
  sw->add_option("--values", values, "Comma-separated axis values (speed in km/h)")->required();
  sw->add_option("--schemes", schemes, "Comma-separated schemes")->capture_default_str();
  sw->add_option("--seeds", seeds, "Seeds per point (1..n)")->capture_default_str()->check(CLI::PositiveNumber);
  sw->add_option("--out", outDir, "Output directory")->required();
  sw->footer(std::string("Worker threads: ") + crvanet::kJobsEnv +
             " (default: one per axis value).");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*sim) return simulate(configPath, seed, tracePath);
    return sweep(sweepConfig, axis, values, schemes, seeds, outDir);
  } catch (const StageError& e) {
    std::cerr << "crvanet: " << e.stage << " failed: " << e.message << '\n';
    if (e.stage == "config" || e.stage == "validate") return 3;
    if (e.stage == "simulate") return 4;
    return 5;
  }
}
