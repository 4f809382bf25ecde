#include "crvanet/spectrum.hpp"

#include <cmath>

namespace crvanet {

namespace {

TraceEvent event(Tick now, EventType type, ChannelId channel, int actor) {
  TraceEvent e;
  e.tick = now;
  e.type = type;
  e.channel = channel;
  e.actor = actor;
  return e;
}

void release(VehicleState& v, ChannelMap& map) {
  if (v.radio.channel) map.clear_holder(*v.radio.channel);
  v.radio.occupying = false;
  v.radio.channel.reset();
}

} // namespace

SchedulingParams make_scheduling_params(const ScenarioConfig& config) {
  SchedulingParams p;
  p.timeStep = config.timeStep;
  p.backOffTicks = duration_to_ticks(config.backOffTime, config.timeStep);
  p.puHoldMean = config.puHoldMean;
  p.puGapMean = config.puGapMean;
  p.suHoldMean = config.suHoldMean;
  p.suGapMean = config.suGapMean;
  return p;
}

double schedule_next(double mean, Rng& rng) {
  std::exponential_distribution<double> draw(1.0 / mean);
  double t = draw(rng);
  while (!(t > 0.0)) t = draw(rng);
  return t;
}

Tick schedule_next_ticks(double mean, double timeStep, Rng& rng) {
  const auto ticks = static_cast<Tick>(std::ceil(schedule_next(mean, rng) / timeStep));
  return ticks < 1 ? 1 : ticks;
}

std::vector<PuTransmitter> make_pu_transmitters(const ScenarioConfig& config,
                                                std::vector<Rng>& rngs) {
  std::vector<PuTransmitter> pus;
  pus.reserve(static_cast<std::size_t>(config.nChannels));
  rngs.clear();
  rngs.reserve(static_cast<std::size_t>(config.nChannels));
  for (ChannelId c = 0; c < config.nChannels; ++c) {
    rngs.push_back(make_stream(config.seed, Stream::PuSchedule, static_cast<std::uint64_t>(c)));
    PuTransmitter pu;
    pu.towerId = c / config.channelsPerTower;
    pu.channel = c;
    pu.occupationTime = schedule_next_ticks(config.puGapMean, config.timeStep, rngs.back());
    pus.push_back(pu);
  }
  return pus;
}

void step_pu(PuTransmitter& pu, Tick now, ChannelMap& map, std::span<VehicleState> fleet,
             const SchedulingParams& params, Rng& rng, std::vector<TraceEvent>& events) {
  if (pu.occupying && now >= pu.vacationTime) {
    map.set_pu_active(pu.channel, false);
    pu.occupying = false;
    pu.occupationTime = now + schedule_next_ticks(params.puGapMean, params.timeStep, rng);
    events.push_back(event(now, EventType::PuVacated, pu.channel, pu.towerId));
  } else if (!pu.occupying && now >= pu.occupationTime) {
    if (const auto holder = map.holder(pu.channel)) {
      VehicleState& su = fleet[static_cast<std::size_t>(*holder)];
      release(su, map);
      su.radio.occupationTime = now + params.backOffTicks;
      events.push_back(event(now, EventType::SuPreempted, pu.channel, su.id));
    }
    map.set_pu_active(pu.channel, true);
    pu.occupying = true;
    pu.vacationTime = now + schedule_next_ticks(params.puHoldMean, params.timeStep, rng);
    events.push_back(event(now, EventType::PuOccupied, pu.channel, pu.towerId));
  }
}

void step_su(VehicleState& v, Tick now, ChannelMap& map, const SchedulingParams& params,
             AllocationPolicy& policy, ChannelSensor& sensor, Rng& rng,
             std::vector<TraceEvent>& events) {
  SuRadioState& radio = v.radio;
  if (radio.occupying) {
    if (now < radio.vacationTime) return;
    const ChannelId channel = *radio.channel;
    release(v, map);
    radio.occupationTime = now + schedule_next_ticks(params.suGapMean, params.timeStep, rng);
    events.push_back(event(now, EventType::SuVacated, channel, v.id));
    return;
  }
  if (now < radio.occupationTime || !policy.ready(v, now)) return;

  const AttemptPlan plan = policy.plan(v, map, now);
  std::optional<ChannelId> chosen;
  for (const ChannelId c : plan.candidates) {
    const SensingOutcome outcome = sensor.sense(v, c);
    events.push_back(make_sense_event(outcome));
    if (outcome.decision == Occupancy::Vacant) {
      chosen = c;
      if (!plan.skipHeld || !map.holder(c)) break;
    }
    if (!plan.scanAll) break;
  }

  if (chosen && !map.holder(*chosen)) {
    map.set_holder(*chosen, v.id);
    radio.occupying = true;
    radio.channel = *chosen;
    radio.vacationTime = now + schedule_next_ticks(params.suHoldMean, params.timeStep, rng);
    TraceEvent e = event(now, EventType::SuOccupied, *chosen, v.id);
    e.interfering = map.pu_active(*chosen);
    events.push_back(e);
    return;
  }

  TraceEvent e = event(now, EventType::SuBackoff, chosen.value_or(-1), v.id);
  e.previousAttempt = radio.occupationTime;
  radio.occupationTime += params.backOffTicks;
  e.nextAttempt = radio.occupationTime;
  events.push_back(e);
}

void resolve_interference(Tick now, ChannelMap& map, std::span<VehicleState> fleet,
                          const SchedulingParams& params, std::vector<TraceEvent>& events) {
  for (ChannelId c = 0; c < map.size(); ++c) {
    if (!map.pu_active(c)) continue;
    const auto holder = map.holder(c);
    if (!holder) continue;
    VehicleState& su = fleet[static_cast<std::size_t>(*holder)];
    release(su, map);
    su.radio.occupationTime = now + params.backOffTicks;
    TraceEvent e = event(now, EventType::SuVacated, c, su.id);
    e.interfering = true;
    events.push_back(e);
  }
}

} // namespace crvanet
