#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "crvanet/rng.hpp"
#include "crvanet/scenario.hpp"
#include "crvanet/su_radio.hpp"

namespace crvanet {

enum class Direction { Forward, Backward };

/// Per-driver Gipps car-following parameters. All magnitudes positive.
struct GippsParams {
  double maxAccel = 1.7;          // a, m/s^2
  double desiredSpeed = 27.78;    // V, m/s
  double reactionTime = 1.0;      // tau, s
  double decel = 3.0;             // b, m/s^2
  double leaderDecelEstimate = 3.0;
  double effectiveLength = 6.5;   // s, m
  double humanError = 0.3;        // theta
  double minSpeed = 25.0;         // v_min, m/s
  double epsilon = 0.3;           // width factor of the randomised speed draw
};

struct VehicleState {
  VehicleId id = 0;
  double position = 0.0;
  Direction direction = Direction::Forward;
  double speed = 0.0;
  GippsParams gipps;
  SuRadioState radio;
};

inline constexpr double kNoLeader = std::numeric_limits<double>::infinity();

/// Acceleration-limited free-flow speed after one reaction time, clipped to V.
double gipps_free_speed(const VehicleState& v);

/// Highest speed that still lets the follower stop behind `leader` if it
/// brakes. Returns kNoLeader when there is no leader and the follower's
/// minimum speed when the braking discriminant is negative.
double gipps_safe_speed(const VehicleState& v, const VehicleState* leader, double roadLength);

/// Distance from `v` forward (in its travel direction) to `other`, on a
/// ring of the given length; in [0, roadLength).
double ahead_distance(const VehicleState& v, const VehicleState& other, double roadLength);

/// Nearest same-direction vehicle ahead, or nullptr.
const VehicleState* find_leader(std::span<const VehicleState> fleet, const VehicleState& v,
                                double roadLength);

/// One mobility step. When `refreshDecision` is set, draws a new held speed
/// max(vMin, U[v_des - eps*a, v_des]) with v_des = min(free, safe); the
/// position then advances by speed*dt and wraps onto [0, roadLength).
VehicleState update_vehicle(const VehicleState& v, const VehicleState* leader, double dt,
                            double roadLength, Rng& rng, bool refreshDecision);

/// Ids of every other vehicle (either direction) within `range` metres along
/// the road, boundary inclusive, in ascending id order.
std::vector<VehicleId> neighbors_in_range(std::span<const VehicleState> fleet,
                                          const VehicleState& origin, double range);

/// Builds the initial fleet: half per direction (forward gets the odd one),
/// uniformly spaced, each driver's V drawn from avgSpeed*(1 +- spread) and
/// theta from [humanErrorMin, humanErrorMax].
std::vector<VehicleState> make_fleet(const ScenarioConfig& config);

/// Advances every vehicle one tick from a snapshot of the previous tick.
class MobilityModel {
public:
  explicit MobilityModel(const ScenarioConfig& config);

  void step(std::vector<VehicleState>& fleet, Tick now);

private:
  double roadLength_;
  double dt_;
  Tick decisionTicks_;
  std::vector<Rng> rngs_;
  std::vector<VehicleState> snapshot_;
};

} // namespace crvanet
