#pragma once

#include <optional>

#include "crvanet/scenario.hpp"

namespace crvanet {

using ChannelId = int;
using VehicleId = int;

/// Secondary-user radio lifecycle of one vehicle. Times are absolute ticks.
struct SuRadioState {
  bool occupying = false;
  std::optional<ChannelId> channel;
  Tick occupationTime = 0; // next attempt instant while idle
  Tick vacationTime = 0;   // scheduled release while transmitting
};

} // namespace crvanet
