#pragma once

#include <iosfwd>
#include <span>
#include <string_view>

#include "crvanet/sensing.hpp"

namespace crvanet {

enum class EventType {
  Move,        // mobility row
  PuOccupied,
  PuVacated,
  SuPreempted,
  Coordinate,  // coordinator election for one cluster
  Sense,
  SuOccupied,
  SuVacated,
  SuBackoff,
};

/// Stage of the tick an event belongs to. Stages run in declaration order.
enum class Phase { Mobility, Pu, Coordination, Su };

Phase phase_of(EventType type);
std::string_view to_string(EventType type);

struct TraceEvent {
  Tick tick = 0;
  EventType type = EventType::Sense;
  ChannelId channel = -1;
  int actor = -1; // vehicle id, or tower id for PU events

  // sense
  Occupancy decision = Occupancy::Vacant;
  Occupancy truth = Occupancy::Vacant;
  // su-backoff: occupationTime before and after the extension
  Tick previousAttempt = 0;
  Tick nextAttempt = 0;
  // su-occupied on a channel whose PU is on air; su-vacated forced by it
  bool interfering = false;
  // move
  double position = 0.0;
  double speed = 0.0;

  OutcomeClass outcome() const { return classify_outcome(decision, truth); }
};

TraceEvent make_sense_event(const SensingOutcome& outcome);

/// CSV rows `time,event,channel,actor,detail` with time = tick * timeStep.
void write_trace_csv(std::ostream& out, std::span<const TraceEvent> trace, double timeStep);

} // namespace crvanet
