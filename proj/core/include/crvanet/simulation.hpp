#pragma once

#include <memory>
#include <vector>

#include "crvanet/channel_map.hpp"
#include "crvanet/coordination.hpp"
#include "crvanet/mobility.hpp"
#include "crvanet/report.hpp"
#include "crvanet/scenario.hpp"
#include "crvanet/sensing.hpp"
#include "crvanet/spectrum.hpp"

namespace crvanet {

struct RunOptions {
  bool trace = false;         // keep every event in the report
  bool traceMobility = false; // also emit a move event per vehicle per tick
};

/// Tick counter over [0, nTicks).
class SimClock {
public:
  SimClock(double runningTime, double timeStep);

  Tick now() const { return now_; }
  Tick total() const { return total_; }
  double step() const { return timeStep_; }
  double seconds() const { return static_cast<double>(now_) * timeStep_; }
  bool done() const { return now_ >= total_; }
  void advance() { ++now_; }

private:
  double timeStep_;
  Tick total_;
  Tick now_ = 0;
};

/// One scenario run, advanced a tick at a time. Each tick runs mobility, the
/// PU machines (ascending channel), a coordination epoch when one is due, the
/// SU machines (ascending vehicle id), and finally the interference check.
class Simulation {
public:
  explicit Simulation(const ScenarioConfig& config, RunOptions options = {});
  ~Simulation();
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  void step();
  const SimulationReport& run();

  bool done() const { return clock_.done(); }
  Tick now() const { return clock_.now(); }
  const SimClock& clock() const { return clock_; }
  const ScenarioConfig& config() const { return config_; }
  const std::vector<VehicleState>& fleet() const { return fleet_; }
  const ChannelMap& channels() const { return map_; }
  const std::vector<PuTransmitter>& primary_users() const { return pus_; }
  const SimulationReport& report() const { return report_; }
  const CoordinationStrategy& strategy() const { return *strategy_; }
  const SensingContext& sensing() const { return ctx_; }

private:
  class EngineSensor;

  ScenarioConfig config_;
  RunOptions options_;
  SimClock clock_;
  SchedulingParams params_;
  SensingContext ctx_;
  MobilityModel mobility_;
  std::vector<VehicleState> fleet_;
  ChannelMap map_;
  std::vector<PuTransmitter> pus_;
  std::vector<Rng> puRngs_;
  std::vector<Rng> suRngs_;
  std::unique_ptr<CoordinationStrategy> strategy_;
  std::unique_ptr<EngineSensor> sensor_;
  Tick nextCoordinationTime_ = 0;
  Tick coordinationTicks_ = 1;
  SimulationReport report_;
  std::vector<TraceEvent> events_;
};

/// Validates the config, runs it to completion and returns the report.
SimulationReport run_simulation(const ScenarioConfig& config, RunOptions options = {});

} // namespace crvanet
