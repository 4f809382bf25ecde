#include "crvanet/coordination.hpp"

#include <algorithm>
#include <cmath>

namespace crvanet {

std::vector<Cluster> form_clusters(std::span<const VehicleState> fleet, double commRange) {
  std::vector<Cluster> clusters;
  for (const Direction dir : {Direction::Forward, Direction::Backward}) {
    std::vector<const VehicleState*> lane;
    for (const VehicleState& v : fleet) {
      if (v.direction == dir) lane.push_back(&v);
    }
    std::sort(lane.begin(), lane.end(), [](const VehicleState* a, const VehicleState* b) {
      return a->position != b->position ? a->position < b->position : a->id < b->id;
    });
    for (std::size_t i = 0; i < lane.size(); ++i) {
      if (i == 0 || lane[i]->position - lane[i - 1]->position > commRange) {
        clusters.push_back(Cluster{dir, {}});
      }
      clusters.back().members.push_back(lane[i]->id);
    }
  }
  return clusters;
}

std::vector<VehicleId> CoordinatorSet::distinct() const {
  std::vector<VehicleId> ids{mainId, forwardId, backwardId};
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

CoordinatorSet select_coordinators(const Cluster& cluster, std::span<const VehicleState> fleet,
                                   Tick now) {
  if (cluster.members.empty()) throw std::invalid_argument("empty cluster");
  CoordinatorSet set;
  set.clusterMembers = cluster.members;
  set.electedAt = now;

  const double sign = cluster.direction == Direction::Forward ? 1.0 : -1.0;
  double centroid = 0.0;
  for (const VehicleId id : cluster.members) centroid += fleet[static_cast<std::size_t>(id)].position;
  centroid /= static_cast<double>(cluster.members.size());

  // (key, id) comparisons so equal keys fall back to the lower id
  auto better = [](double key, VehicleId id, double bestKey, VehicleId bestId) {
    return key < bestKey || (key == bestKey && id < bestId);
  };
  double fKey = 0.0, bKey = 0.0, mKey = 0.0;
  for (const VehicleId id : cluster.members) {
    const double along = sign * fleet[static_cast<std::size_t>(id)].position;
    const double off = std::abs(fleet[static_cast<std::size_t>(id)].position - centroid);
    if (set.forwardId < 0 || better(-along, id, fKey, set.forwardId)) {
      set.forwardId = id;
      fKey = -along;
    }
    if (set.backwardId < 0 || better(along, id, bKey, set.backwardId)) {
      set.backwardId = id;
      bKey = along;
    }
    if (set.mainId < 0 || better(off, id, mKey, set.mainId)) {
      set.mainId = id;
      mKey = off;
    }
  }
  return set;
}

std::vector<ChannelReport> coordinated_sense(const CoordinatorSet& set, int nChannels, Tick now,
                                             std::span<const VehicleState> fleet,
                                             ChannelSensor& sensor) {
  std::vector<ChannelReport> reports(static_cast<std::size_t>(nChannels));
  const std::vector<VehicleId> coordinators = set.distinct();
  for (ChannelId c = 0; c < nChannels; ++c) {
    bool vacant = true;
    for (const VehicleId id : coordinators) {
      // every coordinator senses, even once the fused answer is settled
      if (sensor.sense(fleet[static_cast<std::size_t>(id)], c).decision == Occupancy::Occupied) {
        vacant = false;
      }
    }
    reports[static_cast<std::size_t>(c)] =
        ChannelReport{vacant ? Occupancy::Vacant : Occupancy::Occupied, now};
  }
  return reports;
}

// Standalone

StandaloneStrategy::StandaloneStrategy(int nChannels) : all_(static_cast<std::size_t>(nChannels)) {
  for (ChannelId c = 0; c < nChannels; ++c) all_[static_cast<std::size_t>(c)] = c;
}

AttemptPlan StandaloneStrategy::plan(const VehicleState&, const ChannelMap&, Tick) {
  return AttemptPlan{all_, true, true};
}

// Cooperative

CooperativeStrategy::CooperativeStrategy(int nChannels, double commRange)
    : nChannels_(nChannels), commRange_(commRange) {}

void CooperativeStrategy::on_epoch(std::span<const VehicleState> fleet, Tick now,
                                   ChannelSensor& sensor, std::vector<TraceEvent>& events) {
  decisions_.assign(fleet.size() * static_cast<std::size_t>(nChannels_), Occupancy::Occupied);
  for (const VehicleState& v : fleet) {
    for (ChannelId c = 0; c < nChannels_; ++c) {
      Occupancy d = sensor.sense(v, c).decision;
      if (v.radio.occupying && v.radio.channel == c) d = Occupancy::Occupied; // own transmission
      decisions_[static_cast<std::size_t>(v.id) * static_cast<std::size_t>(nChannels_) +
                 static_cast<std::size_t>(c)] = d;
    }
  }
  TraceEvent e;
  e.tick = now;
  e.type = EventType::Coordinate;
  events.push_back(e);
}

Occupancy CooperativeStrategy::shared_decision(VehicleId v, ChannelId c) const {
  const std::size_t i =
      static_cast<std::size_t>(v) * static_cast<std::size_t>(nChannels_) + static_cast<std::size_t>(c);
  return i < decisions_.size() ? decisions_[i] : Occupancy::Occupied;
}

AttemptPlan CooperativeStrategy::plan(const VehicleState& v, const ChannelMap&, Tick) {
  std::vector<VehicleId> voters = neighbors_in_range(fleet_, v, commRange_);
  voters.push_back(v.id);
  std::vector<ChannelId> voted;
  std::vector<ChannelId> rest;
  for (ChannelId c = 0; c < nChannels_; ++c) {
    const bool anyVacant = std::any_of(voters.begin(), voters.end(), [&](VehicleId id) {
      return shared_decision(id, c) == Occupancy::Vacant;
    });
    (anyVacant ? voted : rest).push_back(c);
  }
  voted.insert(voted.end(), rest.begin(), rest.end());
  return AttemptPlan{std::move(voted), false};
}

// Proposed

ProposedStrategy::ProposedStrategy(int nChannels, double commRange, Tick intervalTicks)
    : nChannels_(nChannels), commRange_(commRange), intervalTicks_(intervalTicks) {}

void ProposedStrategy::on_epoch(std::span<const VehicleState> fleet, Tick now,
                                ChannelSensor& sensor, std::vector<TraceEvent>& events) {
  const std::vector<Cluster> clusters = form_clusters(fleet, commRange_);
  state_.perCluster.clear();
  state_.channelReports.clear();
  state_.clusterOf.assign(fleet.size(), -1);
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    CoordinatorSet set = select_coordinators(clusters[k], fleet, now);
    for (const VehicleId id : set.clusterMembers) {
      state_.clusterOf[static_cast<std::size_t>(id)] = static_cast<int>(k);
    }
    state_.channelReports.push_back(coordinated_sense(set, nChannels_, now, fleet, sensor));
    TraceEvent e;
    e.tick = now;
    e.type = EventType::Coordinate;
    e.actor = set.mainId;
    events.push_back(e);
    state_.perCluster.push_back(std::move(set));
  }
  lastEpoch_ = now;
  state_.nextCoordinationTime = now + intervalTicks_;
}

bool ProposedStrategy::ready(const VehicleState&, Tick now) const { return lastEpoch_ == now; }

AttemptPlan ProposedStrategy::plan(const VehicleState& v, const ChannelMap& map, Tick) {
  AttemptPlan plan;
  const auto id = static_cast<std::size_t>(v.id);
  if (id >= state_.clusterOf.size() || state_.clusterOf[id] < 0) return plan;
  const int k = state_.clusterOf[id];
  const CoordinatorSet& set = state_.perCluster[static_cast<std::size_t>(k)];
  const std::vector<ChannelReport>& reports = state_.channelReports[static_cast<std::size_t>(k)];
  for (ChannelId c = 0; c < nChannels_; ++c) {
    if (reports[static_cast<std::size_t>(c)].decision != Occupancy::Vacant) continue;
    const auto holder = map.holder(c);
    if (holder && std::find(set.clusterMembers.begin(), set.clusterMembers.end(), *holder) !=
                      set.clusterMembers.end()) {
      continue;
    }
    plan.candidates.push_back(c);
  }
  return plan;
}

std::vector<ChannelId> candidates_for(const VehicleState& v, CoordinationStrategy& strategy,
                                      const ChannelMap& map, Tick now) {
  return strategy.plan(v, map, now).candidates;
}

std::unique_ptr<CoordinationStrategy> make_strategy(const ScenarioConfig& config) {
  switch (config.scheme) {
  case Scheme::Standalone: return std::make_unique<StandaloneStrategy>(config.nChannels);
  case Scheme::Cooperative:
    return std::make_unique<CooperativeStrategy>(config.nChannels, config.commRange);
  case Scheme::Proposed:
    return std::make_unique<ProposedStrategy>(
        config.nChannels, config.commRange,
        duration_to_ticks(config.coordinationInterval, config.timeStep));
  }
  throw std::invalid_argument("unknown scheme");
}

} // namespace crvanet
