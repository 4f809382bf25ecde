#include "crvanet/mobility.hpp"

#include <algorithm>
#include <cmath>

namespace crvanet {

double gipps_free_speed(const VehicleState& v) {
  const GippsParams& g = v.gipps;
  const double ratio = v.speed / g.desiredSpeed;
  const double free = v.speed + 2.5 * g.maxAccel * g.reactionTime * (1.0 - ratio) *
                                    std::sqrt(0.025 + std::max(0.0, ratio));
  return std::min(free, g.desiredSpeed);
}

double gipps_safe_speed(const VehicleState& v, const VehicleState* leader, double roadLength) {
  if (leader == nullptr) return kNoLeader;
  const GippsParams& g = v.gipps;
  const double gap = ahead_distance(v, *leader, roadLength) - g.effectiveLength;
  const double bt = g.decel * g.reactionTime;
  const double disc = bt * bt + g.decel * (2.0 * gap - v.speed * g.reactionTime +
                                           leader->speed * leader->speed / g.leaderDecelEstimate);
  if (disc < 0.0) return g.minSpeed;
  return -bt + std::sqrt(disc);
}

double ahead_distance(const VehicleState& v, const VehicleState& other, double roadLength) {
  double d = v.direction == Direction::Forward ? other.position - v.position
                                               : v.position - other.position;
  d = std::fmod(d, roadLength);
  if (d < 0.0) d += roadLength;
  return d;
}

const VehicleState* find_leader(std::span<const VehicleState> fleet, const VehicleState& v,
                                double roadLength) {
  const VehicleState* best = nullptr;
  double bestDistance = kNoLeader;
  for (const VehicleState& other : fleet) {
    if (other.id == v.id || other.direction != v.direction) continue;
    const double d = ahead_distance(v, other, roadLength);
    if (d < bestDistance || (d == bestDistance && best != nullptr && other.id < best->id)) {
      best = &other;
      bestDistance = d;
    }
  }
  return best;
}

VehicleState update_vehicle(const VehicleState& v, const VehicleState* leader, double dt,
                            double roadLength, Rng& rng, bool refreshDecision) {
  VehicleState next = v;
  if (refreshDecision) {
    const GippsParams& g = v.gipps;
    const double desired =
        std::min(gipps_free_speed(v), gipps_safe_speed(v, leader, roadLength));
    const double low = desired - g.epsilon * g.maxAccel;
    std::uniform_real_distribution<double> draw(std::min(low, desired), desired);
    next.speed = std::max(g.minSpeed, draw(rng));
  }
  const double step = next.speed * dt;
  double x = v.direction == Direction::Forward ? v.position + step : v.position - step;
  x = std::fmod(x, roadLength);
  if (x < 0.0) x += roadLength;
  if (x >= roadLength) x = 0.0;
  next.position = x;
  return next;
}

std::vector<VehicleId> neighbors_in_range(std::span<const VehicleState> fleet,
                                          const VehicleState& origin, double range) {
  std::vector<VehicleId> ids;
  for (const VehicleState& other : fleet) {
    if (other.id == origin.id) continue;
    if (std::abs(other.position - origin.position) <= range) ids.push_back(other.id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<VehicleState> make_fleet(const ScenarioConfig& config) {
  const int total = config.nVehicles;
  const int forward = (total + 1) / 2;
  const int backward = total - forward;

  std::vector<VehicleState> fleet;
  fleet.reserve(static_cast<std::size_t>(total));
  const auto place = [&](int count, Direction dir, int firstId) {
    const double spacing = count > 0 ? config.roadLength / count : 0.0;
    for (int i = 0; i < count; ++i) {
      VehicleState v;
      v.id = firstId + i;
      v.direction = dir;
      v.position = spacing * i;

      Rng rng = make_stream(config.seed, Stream::Mobility, static_cast<std::uint64_t>(v.id), 0);
      std::uniform_real_distribution<double> spread(1.0 - config.fleetSpeedSpread,
                                                    1.0 + config.fleetSpeedSpread);
      std::uniform_real_distribution<double> theta(config.humanErrorMin, config.humanErrorMax);

      GippsParams& g = v.gipps;
      g.maxAccel = config.maxAccel;
      g.desiredSpeed = config.avgSpeed * spread(rng);
      g.reactionTime = config.reactionTime;
      g.decel = config.decel;
      g.leaderDecelEstimate = config.leaderDecelEstimate;
      g.effectiveLength = config.effectiveLength;
      g.humanError = theta(rng);
      g.epsilon = g.humanError;
      g.minSpeed = (1.0 - config.perVehicleSpeedDeviation) * g.desiredSpeed;

      v.speed = g.desiredSpeed;
      fleet.push_back(v);
    }
  };
  place(forward, Direction::Forward, 0);
  place(backward, Direction::Backward, forward);
  return fleet;
}

MobilityModel::MobilityModel(const ScenarioConfig& config)
    : roadLength_(config.roadLength),
      dt_(config.timeStep),
      decisionTicks_(duration_to_ticks(config.reactionTime, config.timeStep)) {
  rngs_.reserve(static_cast<std::size_t>(config.nVehicles));
  for (int id = 0; id < config.nVehicles; ++id) {
    rngs_.push_back(make_stream(config.seed, Stream::Mobility, static_cast<std::uint64_t>(id), 1));
  }
}

void MobilityModel::step(std::vector<VehicleState>& fleet, Tick now) {
  const bool refresh = now % decisionTicks_ == 0;
  snapshot_ = fleet;
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    const VehicleState& before = snapshot_[i];
    const VehicleState* leader = refresh ? find_leader(snapshot_, before, roadLength_) : nullptr;
    VehicleState moved = update_vehicle(before, leader, dt_, roadLength_,
                                        rngs_[static_cast<std::size_t>(before.id)], refresh);
    moved.radio = fleet[i].radio;
    fleet[i] = moved;
  }
}

} // namespace crvanet
