#pragma once

#include <optional>
#include <vector>

#include "crvanet/su_radio.hpp"

namespace crvanet {

/// Ground truth shared by the PU and SU state machines: whether the licensed
/// user is on air on each channel and which vehicle (if any) holds it.
class ChannelMap {
public:
  explicit ChannelMap(int nChannels)
      : puActive_(static_cast<std::size_t>(nChannels), false),
        holder_(static_cast<std::size_t>(nChannels)) {}

  int size() const { return static_cast<int>(puActive_.size()); }
  bool valid(ChannelId c) const { return c >= 0 && c < size(); }

  bool pu_active(ChannelId c) const { return puActive_[idx(c)]; }
  void set_pu_active(ChannelId c, bool on) { puActive_[idx(c)] = on; }

  std::optional<VehicleId> holder(ChannelId c) const { return holder_[idx(c)]; }
  void set_holder(ChannelId c, VehicleId v) { holder_[idx(c)] = v; }
  void clear_holder(ChannelId c) { holder_[idx(c)].reset(); }

private:
  static std::size_t idx(ChannelId c) { return static_cast<std::size_t>(c); }

  std::vector<bool> puActive_;
  std::vector<std::optional<VehicleId>> holder_;
};

} // namespace crvanet
