#include "crvanet/report.hpp"

#include <iomanip>
#include <ostream>

namespace crvanet {

Phase phase_of(EventType type) {
  switch (type) {
  case EventType::Move: return Phase::Mobility;
  case EventType::PuOccupied:
  case EventType::PuVacated:
  case EventType::SuPreempted: return Phase::Pu;
  case EventType::Coordinate: return Phase::Coordination;
  case EventType::Sense:
  case EventType::SuOccupied:
  case EventType::SuVacated:
  case EventType::SuBackoff: return Phase::Su;
  }
  return Phase::Su;
}

std::string_view to_string(EventType type) {
  switch (type) {
  case EventType::Move: return "move";
  case EventType::PuOccupied: return "pu-occupied";
  case EventType::PuVacated: return "pu-vacated";
  case EventType::SuPreempted: return "su-preempted";
  case EventType::Coordinate: return "coordinate";
  case EventType::Sense: return "sense";
  case EventType::SuOccupied: return "su-occupied";
  case EventType::SuVacated: return "su-vacated";
  case EventType::SuBackoff: return "su-backoff";
  }
  return "unknown";
}

TraceEvent make_sense_event(const SensingOutcome& outcome) {
  TraceEvent e;
  e.tick = outcome.time;
  e.type = EventType::Sense;
  e.channel = outcome.channel;
  e.actor = outcome.observer;
  e.decision = outcome.decision;
  e.truth = outcome.truth;
  return e;
}

void write_trace_csv(std::ostream& out, std::span<const TraceEvent> trace, double timeStep) {
  out << "time,event,channel,actor,detail\n";
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(9);
  for (const TraceEvent& e : trace) {
    out << static_cast<double>(e.tick) * timeStep << ',' << to_string(e.type) << ',';
    if (e.channel >= 0) out << e.channel;
    out << ',' << e.actor << ',';
    switch (e.type) {
    case EventType::Sense:
      out << to_string(e.decision) << '/' << to_string(e.truth) << '/' << to_string(e.outcome());
      break;
    case EventType::SuBackoff:
      out << "next=" << static_cast<double>(e.nextAttempt) * timeStep;
      break;
    case EventType::SuOccupied:
    case EventType::SuVacated:
      if (e.interfering) out << "interference";
      break;
    case EventType::Move:
      out << "x=" << e.position << ";v=" << e.speed;
      break;
    default:
      break;
    }
    out << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

bool SimulationReport::counters_equal(const SimulationReport& o) const {
  return allocations == o.allocations && falseAlarms == o.falseAlarms &&
         misdetections == o.misdetections && correctDetections == o.correctDetections &&
         sensingEvents == o.sensingEvents && interferingAllocations == o.interferingAllocations &&
         preemptions == o.preemptions && backoffs == o.backoffs;
}

bool SimulationReport::operator==(const SimulationReport& o) const {
  if (!counters_equal(o) || traceEnabled != o.traceEnabled || trace.size() != o.trace.size()) {
    return false;
  }
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TraceEvent& a = trace[i];
    const TraceEvent& b = o.trace[i];
    if (a.tick != b.tick || a.type != b.type || a.channel != b.channel || a.actor != b.actor ||
        a.decision != b.decision || a.truth != b.truth || a.previousAttempt != b.previousAttempt ||
        a.nextAttempt != b.nextAttempt || a.interfering != b.interfering ||
        a.position != b.position || a.speed != b.speed) {
      return false;
    }
  }
  return true;
}

void record_event(SimulationReport& report, const TraceEvent& event) {
  switch (event.type) {
  case EventType::SuOccupied:
    ++report.allocations;
    if (event.interfering) ++report.interferingAllocations;
    break;
  case EventType::Sense:
    ++report.sensingEvents;
    switch (event.outcome()) {
    case OutcomeClass::CorrectDetection: ++report.correctDetections; break;
    case OutcomeClass::FalseAlarm: ++report.falseAlarms; break;
    case OutcomeClass::Misdetection: ++report.misdetections; break;
    }
    break;
  case EventType::SuPreempted: ++report.preemptions; break;
  case EventType::SuBackoff: ++report.backoffs; break;
  default: break;
  }
  if (report.traceEnabled) report.trace.push_back(event);
}

} // namespace crvanet
