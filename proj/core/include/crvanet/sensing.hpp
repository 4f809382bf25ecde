#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "crvanet/channel_map.hpp"
#include "crvanet/mobility.hpp"
#include "crvanet/propagation.hpp"
#include "crvanet/rng.hpp"
#include "crvanet/scenario.hpp"

namespace crvanet {

enum class Occupancy { Vacant, Occupied };

enum class OutcomeClass { CorrectDetection, FalseAlarm, Misdetection };

std::string_view to_string(Occupancy o);
std::string_view to_string(OutcomeClass c);

/// Energy detector over a window of nSamples complex samples.
struct DetectorParams {
  int nSamples = 100;
  double noisePower = 1.0; // sigma^2, W
  double targetPfa = 0.1;
  double threshold = 0.0;  // lambda, W
};

/// Detector with its threshold calibrated for targetPfa.
DetectorParams make_detector(int nSamples, double noisePowerW, double targetPfa);

/// lambda = sigma^2 (1 + Qinv(Pfa) / sqrt(N)). Requires N >= 50 and
/// 0 < Pfa < 1; throws std::invalid_argument otherwise.
double detection_threshold(const DetectorParams& params);

/// Inverse of the standard normal upper tail.
double q_inverse(double p);

/// Normalised window energy at the given linear SNR (0 for an idle channel):
/// sigma^2 (1 + snr) (1 + Z / sqrt(N)), the large-N form of the chi-square
/// energy statistic with a Gaussian signal.
double energy_statistic(double snrLinear, const DetectorParams& params, Rng& rng);

/// (vacant, vacant) and (occupied, occupied) are correct; deciding occupied
/// on a vacant channel is a false alarm, the converse a misdetection.
OutcomeClass classify_outcome(Occupancy decision, Occupancy truth);

struct SensingOutcome {
  VehicleId observer = -1;
  ChannelId channel = -1;
  Occupancy decision = Occupancy::Vacant;
  Occupancy truth = Occupancy::Vacant;
  double statistic = 0.0;
  double threshold = 0.0;
  Tick time = 0;

  OutcomeClass classification() const { return classify_outcome(decision, truth); }
};

/// Everything a detector needs that does not change during a run.
struct SensingContext {
  DetectorParams detector;
  std::vector<TowerGeometry> towers;
  std::vector<int> towerOfChannel;
  double noiseDbw = 0.0;
  double txPowerPu = 0.0;
  double suSnrLinear = 100.0;
  double sensingRange = 400.0;
  double frequencyMhz = 150.0;
  double baseHeight = 50.0;
  double mobileHeight = 1.5;

  int tower_of(ChannelId c) const;
  /// Median (unfaded) PU SNR of a tower at a road position, linear.
  double pu_median_snr(int tower, double roadPosition) const;
};

SensingContext make_sensing_context(const ScenarioConfig& config);

/// Senses one channel at one observer. Truth is occupied when the PU is on
/// air or another vehicle within sensingRange holds the channel. A PU signal
/// gets a fresh Rayleigh gain from `fading`. `puMedianSnr` may carry the
/// observer's precomputed median SNR for the channel's tower (negative means
/// compute it here). Throws std::out_of_range for an unknown channel.
SensingOutcome sense_channel(const SensingContext& ctx, const VehicleState& observer,
                             ChannelId channel, const ChannelMap& map,
                             std::span<const VehicleState> fleet, Rng& fading, Rng& noise,
                             Tick now, double puMedianSnr = -1.0);

/// Source of sensing decisions the state machines and coordinators call into.
class ChannelSensor {
public:
  virtual ~ChannelSensor() = default;
  virtual SensingOutcome sense(const VehicleState& observer, ChannelId channel) = 0;
};

} // namespace crvanet
