#pragma once

#include <memory>
#include <span>
#include <vector>

#include "crvanet/mobility.hpp"
#include "crvanet/sensing.hpp"
#include "crvanet/spectrum.hpp"
#include "crvanet/trace.hpp"

namespace crvanet {

/// Same-direction vehicles chained so that consecutive members (by road
/// position) are within commRange of each other.
struct Cluster {
  Direction direction = Direction::Forward;
  std::vector<VehicleId> members; // ascending road position
};

/// Partitions the fleet into maximal chains, forward clusters first, each
/// direction ordered by position. Deterministic given positions.
std::vector<Cluster> form_clusters(std::span<const VehicleState> fleet, double commRange);

/// The three coordinators of a cluster. They coincide in clusters of one or
/// two vehicles.
struct CoordinatorSet {
  VehicleId mainId = -1;
  VehicleId forwardId = -1;
  VehicleId backwardId = -1;
  std::vector<VehicleId> clusterMembers;
  Tick electedAt = 0;

  /// Distinct coordinator ids, ascending.
  std::vector<VehicleId> distinct() const;
};

/// forward = furthest along the travel direction, backward = least far,
/// main = nearest the cluster centroid; ties go to the lower id.
CoordinatorSet select_coordinators(const Cluster& cluster, std::span<const VehicleState> fleet,
                                   Tick now);

struct ChannelReport {
  Occupancy decision = Occupancy::Occupied;
  Tick timestamp = 0;
};

/// Every distinct coordinator senses every channel; a channel is reported
/// vacant only when all of them read it vacant.
std::vector<ChannelReport> coordinated_sense(const CoordinatorSet& set, int nChannels, Tick now,
                                             std::span<const VehicleState> fleet,
                                             ChannelSensor& sensor);

struct CoordinationState {
  Tick nextCoordinationTime = 0;
  std::vector<CoordinatorSet> perCluster;
  std::vector<std::vector<ChannelReport>> channelReports; // [cluster][channel]
  std::vector<int> clusterOf;                             // [vehicle] -> cluster, -1 if none
};

/// A sensing/coordination/allocation scheme. The engine calls on_epoch when a
/// coordination epoch fires (schemes without epochs are never called), then
/// drives each SU through step_su with the scheme as its AllocationPolicy.
class CoordinationStrategy : public AllocationPolicy {
public:
  virtual Scheme scheme() const = 0;
  virtual bool uses_epochs() const = 0;
  virtual void on_epoch(std::span<const VehicleState> fleet, Tick now, ChannelSensor& sensor,
                        std::vector<TraceEvent>& events) = 0;

  /// Latest fleet snapshot the scheme may consult while planning.
  void bind_fleet(std::span<const VehicleState> fleet) { fleet_ = fleet; }

protected:
  std::span<const VehicleState> fleet_;
};

/// Each vehicle scans every channel itself in ascending order, passing over
/// vacant channels that already have an SU holder.
class StandaloneStrategy final : public CoordinationStrategy {
public:
  explicit StandaloneStrategy(int nChannels);

  Scheme scheme() const override { return Scheme::Standalone; }
  bool uses_epochs() const override { return false; }
  void on_epoch(std::span<const VehicleState>, Tick, ChannelSensor&,
                std::vector<TraceEvent>&) override {}
  bool ready(const VehicleState&, Tick) const override { return true; }
  AttemptPlan plan(const VehicleState& v, const ChannelMap& map, Tick now) override;

private:
  std::vector<ChannelId> all_;
};

/// Every vehicle senses all channels at each epoch and shares its decisions
/// with neighbours in commRange. A requester ranks channels with at least one
/// vacant vote first and re-senses only the top one.
class CooperativeStrategy final : public CoordinationStrategy {
public:
  CooperativeStrategy(int nChannels, double commRange);

  Scheme scheme() const override { return Scheme::Cooperative; }
  bool uses_epochs() const override { return true; }
  void on_epoch(std::span<const VehicleState> fleet, Tick now, ChannelSensor& sensor,
                std::vector<TraceEvent>& events) override;
  bool ready(const VehicleState&, Tick) const override { return true; }
  AttemptPlan plan(const VehicleState& v, const ChannelMap& map, Tick now) override;

  /// Latest decision of one vehicle on one channel (occupied before any epoch).
  Occupancy shared_decision(VehicleId v, ChannelId c) const;

private:
  int nChannels_;
  double commRange_;
  std::vector<Occupancy> decisions_; // [vehicle * nChannels + channel]
};

/// Three coordinators per cluster sense at each epoch and fuse by
/// AND-of-vacancy. Requests are answered at the epoch, with the channels the
/// cluster reports vacant and no cluster member holds; the requester then
/// re-senses the first candidate before occupying it.
class ProposedStrategy final : public CoordinationStrategy {
public:
  ProposedStrategy(int nChannels, double commRange, Tick intervalTicks);

  Scheme scheme() const override { return Scheme::Proposed; }
  bool uses_epochs() const override { return true; }
  void on_epoch(std::span<const VehicleState> fleet, Tick now, ChannelSensor& sensor,
                std::vector<TraceEvent>& events) override;
  bool ready(const VehicleState& v, Tick now) const override;
  AttemptPlan plan(const VehicleState& v, const ChannelMap& map, Tick now) override;

  const CoordinationState& state() const { return state_; }

private:
  int nChannels_;
  double commRange_;
  Tick intervalTicks_;
  Tick lastEpoch_ = -1;
  CoordinationState state_;
};

/// Candidate list of the active scheme for one requester.
std::vector<ChannelId> candidates_for(const VehicleState& v, CoordinationStrategy& strategy,
                                      const ChannelMap& map, Tick now);

std::unique_ptr<CoordinationStrategy> make_strategy(const ScenarioConfig& config);

} // namespace crvanet
