#include "crvanet/simulation.hpp"

namespace crvanet {

SimClock::SimClock(double runningTime, double timeStep)
    : timeStep_(timeStep), total_(num_time_slices(runningTime, timeStep)) {}

/// Detector front end of the engine. Noise draws come from a stream per
/// observer and fading from a stream per (tower, observer) pair; median SNRs
/// are cached per observer and tick.
class Simulation::EngineSensor final : public ChannelSensor {
public:
  EngineSensor(const Simulation& sim) : sim_(sim) {
    const auto& cfg = sim.config_;
    const std::size_t n = static_cast<std::size_t>(cfg.nVehicles);
    const std::size_t towers = sim.ctx_.towers.size();
    noise_.reserve(n);
    fading_.reserve(n * towers);
    for (std::size_t v = 0; v < n; ++v) {
      noise_.push_back(make_stream(cfg.seed, Stream::SensingNoise, v));
      for (std::size_t t = 0; t < towers; ++t) {
        fading_.push_back(make_stream(cfg.seed, Stream::Fading, t, v));
      }
    }
    cache_.assign(n * towers, -1.0);
    cacheTick_.assign(n, -1);
  }

  SensingOutcome sense(const VehicleState& observer, ChannelId channel) override {
    const std::size_t towers = sim_.ctx_.towers.size();
    const auto v = static_cast<std::size_t>(observer.id);
    const auto t = static_cast<std::size_t>(sim_.ctx_.tower_of(channel));
    const Tick now = sim_.clock_.now();
    if (cacheTick_[v] != now) {
      std::fill_n(cache_.begin() + static_cast<std::ptrdiff_t>(v * towers), towers, -1.0);
      cacheTick_[v] = now;
    }
    double& median = cache_[v * towers + t];
    if (median < 0.0) median = sim_.ctx_.pu_median_snr(static_cast<int>(t), observer.position);
    return sense_channel(sim_.ctx_, observer, channel, sim_.map_, sim_.fleet_,
                         fading_[v * towers + t], noise_[v], now, median);
  }

private:
  const Simulation& sim_;
  std::vector<Rng> noise_;
  std::vector<Rng> fading_;
  std::vector<double> cache_;
  std::vector<Tick> cacheTick_;
};

Simulation::Simulation(const ScenarioConfig& config, RunOptions options)
    : config_((validate(config), config)),
      options_(options),
      clock_(config.runningTime, config.timeStep),
      params_(make_scheduling_params(config)),
      ctx_(make_sensing_context(config)),
      mobility_(config),
      fleet_(make_fleet(config)),
      map_(config.nChannels),
      strategy_(make_strategy(config)),
      coordinationTicks_(duration_to_ticks(config.coordinationInterval, config.timeStep)) {
  pus_ = make_pu_transmitters(config, puRngs_);
  suRngs_.reserve(fleet_.size());
  for (VehicleState& v : fleet_) {
    suRngs_.push_back(make_stream(config.seed, Stream::SuSchedule, static_cast<std::uint64_t>(v.id)));
    v.radio.occupationTime =
        schedule_next_ticks(config.suGapMean, config.timeStep, suRngs_.back());
  }
  sensor_ = std::make_unique<EngineSensor>(*this);
  report_.traceEnabled = options.trace;
}

Simulation::~Simulation() = default;

void Simulation::step() {
  if (done()) return;
  const Tick now = clock_.now();
  events_.clear();

  mobility_.step(fleet_, now);
  if (options_.traceMobility) {
    for (const VehicleState& v : fleet_) {
      TraceEvent e;
      e.tick = now;
      e.type = EventType::Move;
      e.actor = v.id;
      e.position = v.position;
      e.speed = v.speed;
      events_.push_back(e);
    }
  }

  for (PuTransmitter& pu : pus_) {
    step_pu(pu, now, map_, fleet_, params_, puRngs_[static_cast<std::size_t>(pu.channel)], events_);
  }

  strategy_->bind_fleet(fleet_);
  if (strategy_->uses_epochs() && now >= nextCoordinationTime_) {
    strategy_->on_epoch(fleet_, now, *sensor_, events_);
    nextCoordinationTime_ += coordinationTicks_;
  }

  for (VehicleState& v : fleet_) {
    step_su(v, now, map_, params_, *strategy_, *sensor_, suRngs_[static_cast<std::size_t>(v.id)],
            events_);
  }
  resolve_interference(now, map_, fleet_, params_, events_);

  for (const TraceEvent& e : events_) record_event(report_, e);
  clock_.advance();
}

const SimulationReport& Simulation::run() {
  while (!done()) step();
  return report_;
}

SimulationReport run_simulation(const ScenarioConfig& config, RunOptions options) {
  Simulation sim(config, options);
  sim.run();
  return sim.report();
}

} // namespace crvanet
