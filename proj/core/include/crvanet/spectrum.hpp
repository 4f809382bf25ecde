#pragma once

#include <span>
#include <vector>

#include "crvanet/channel_map.hpp"
#include "crvanet/mobility.hpp"
#include "crvanet/rng.hpp"
#include "crvanet/sensing.hpp"
#include "crvanet/trace.hpp"

namespace crvanet {

/// Timing knobs shared by the PU and SU state machines.
struct SchedulingParams {
  double timeStep = 0.001;
  Tick backOffTicks = 10;
  double puHoldMean = 0.1;
  double puGapMean = 0.1;
  double suHoldMean = 0.05;
  double suGapMean = 0.05;
};

SchedulingParams make_scheduling_params(const ScenarioConfig& config);

/// Exponential holding/gap time with the given mean, in seconds; > 0.
double schedule_next(double mean, Rng& rng);

/// schedule_next rounded up to whole ticks, at least one.
Tick schedule_next_ticks(double mean, double timeStep, Rng& rng);

/// The licensed user of one channel.
struct PuTransmitter {
  int towerId = 0;
  ChannelId channel = 0;
  bool occupying = false;
  Tick occupationTime = 0;
  Tick vacationTime = 0;
};

/// One PU per channel, idle, with the first occupation drawn from `rngs`.
std::vector<PuTransmitter> make_pu_transmitters(const ScenarioConfig& config,
                                                std::vector<Rng>& rngs);

/// Occupy/vacate state machine of a PU channel. Taking the channel while a
/// vehicle holds it tears the SU down first (su-preempted, then pu-occupied);
/// the preempted vehicle retries after one back-off.
void step_pu(PuTransmitter& pu, Tick now, ChannelMap& map, std::span<VehicleState> fleet,
             const SchedulingParams& params, Rng& rng, std::vector<TraceEvent>& events);

/// Channels an SU should look at, in order. With `scanAll` the SU senses
/// down the list until one reads vacant; otherwise only the first is sensed.
/// With `skipHeld` a channel that reads vacant but already has a holder does
/// not end the scan.
struct AttemptPlan {
  std::vector<ChannelId> candidates;
  bool scanAll = false;
  bool skipHeld = false;
};

/// Decides when an idle, due SU may attempt and which channels it tries.
class AllocationPolicy {
public:
  virtual ~AllocationPolicy() = default;
  virtual bool ready(const VehicleState& v, Tick now) const = 0;
  virtual AttemptPlan plan(const VehicleState& v, const ChannelMap& map, Tick now) = 0;
};

/// Transmit/back-off state machine of one SU. A due transmitter tears down
/// and draws its next gap; a due idle vehicle senses per the policy's plan,
/// occupies the first channel read vacant that has no holder, and otherwise
/// extends occupationTime by exactly one back-off.
void step_su(VehicleState& v, Tick now, ChannelMap& map, const SchedulingParams& params,
             AllocationPolicy& policy, ChannelSensor& sensor, Rng& rng,
             std::vector<TraceEvent>& events);

/// Tears down every SU sitting on a channel whose PU is on air (only a
/// misdetection can put one there); the vehicle retries after a back-off.
void resolve_interference(Tick now, ChannelMap& map, std::span<VehicleState> fleet,
                          const SchedulingParams& params, std::vector<TraceEvent>& events);

} // namespace crvanet
