#pragma once

#include <stdexcept>
#include <vector>

#include "crvanet/rng.hpp"
#include "crvanet/scenario.hpp"
#include "crvanet/su_radio.hpp"

namespace crvanet {

/// An input outside the empirical validity range of the Hata formulas.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

inline constexpr double kBoltzmann = 1.380649e-23; // J/K

/// Hata median path loss for small/medium cities, in dB.
/// Valid for 150-1500 MHz, base 30-200 m, mobile 1-10 m, 1-20 km.
double hata_urban_loss(double frequencyMhz, double baseHeight, double mobileHeight,
                       double distanceKm);

/// -2 [log10(f/28)]^2 - 5.4, in dB. No range check.
double hata_suburban_correction(double frequencyMhz);

/// Hata suburban loss: urban loss plus the suburban correction.
double hata_suburban_loss(double frequencyMhz, double baseHeight, double mobileHeight,
                          double distanceKm);

/// Unit-mean exponential power gain of a Rayleigh-faded link. Always > 0.
double rayleigh_gain(Rng& rng);

/// tx - loss + 10 log10(gain), in dBW.
double received_power(double txDbw, double lossDb, double gain);

/// 10 log10(k T B), in dBW.
double thermal_noise_power(double temperatureK, double bandwidthHz);

struct LinkBudget {
  double txPower = 0.0;   // dBW
  double pathLoss = 0.0;  // dB
  double fadingGain = 1.0;
  double rxPower = 0.0;   // dBW
};

/// A licensed transmitter beside the road.
struct TowerGeometry {
  int towerId = 0;
  double alongRoad = 0.0; // projection of the tower onto the road, m
  double offset = 0.0;    // perpendicular distance to the road, m
  ChannelId firstChannel = 0;
  ChannelId channelCount = 0;

  bool owns(ChannelId c) const { return c >= firstChannel && c < firstChannel + channelCount; }
  double distance_to(double roadPosition) const;
};

/// Towers evenly spread along the road, each owning a contiguous block of
/// channelsPerTower channels.
std::vector<TowerGeometry> make_towers(const ScenarioConfig& config);

/// Median link budget from a tower to a road position (fading gain 1).
LinkBudget median_link(const ScenarioConfig& config, const TowerGeometry& tower,
                       double roadPosition);

} // namespace crvanet
