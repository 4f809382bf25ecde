#pragma once

#include <cstdint>
#include <vector>

#include "crvanet/trace.hpp"

namespace crvanet {

struct SimulationReport {
  std::int64_t allocations = 0;
  std::int64_t falseAlarms = 0;
  std::int64_t misdetections = 0;
  std::int64_t correctDetections = 0;
  std::int64_t sensingEvents = 0;

  // secondary counters, not part of the sweep table
  std::int64_t interferingAllocations = 0; // SU occupied a channel whose PU was on air
  std::int64_t preemptions = 0;
  std::int64_t backoffs = 0;

  bool traceEnabled = false;
  std::vector<TraceEvent> trace;

  bool counters_equal(const SimulationReport& other) const;
  bool operator==(const SimulationReport& other) const;
};

/// Folds one event into the report: su-occupied bumps allocations, a sense
/// event bumps sensingEvents and exactly one outcome class. Every event is
/// appended to the trace when tracing is on.
void record_event(SimulationReport& report, const TraceEvent& event);

} // namespace crvanet
