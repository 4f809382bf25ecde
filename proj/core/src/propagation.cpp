#include "crvanet/propagation.hpp"

#include <cmath>
#include <string>

namespace crvanet {

namespace {

void check_range(double value, double lo, double hi, const char* what) {
  if (!(value >= lo && value <= hi)) {
    throw DomainError(std::string(what) + " = " + std::to_string(value) + " outside Hata range [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

} // namespace

double hata_urban_loss(double f, double hb, double hm, double dKm) {
  check_range(f, 150.0, 1500.0, "frequency (MHz)");
  check_range(hb, 30.0, 200.0, "base station height (m)");
  check_range(hm, 1.0, 10.0, "mobile height (m)");
  check_range(dKm, 1.0, 20.0, "distance (km)");

  const double logF = std::log10(f);
  const double logHb = std::log10(hb);
  // mobile antenna correction, small/medium city
  const double aHm = (1.1 * logF - 0.7) * hm - (1.56 * logF - 0.8);
  return 69.55 + 26.16 * logF - 13.82 * logHb - aHm + (44.9 - 6.55 * logHb) * std::log10(dKm);
}

double hata_suburban_correction(double f) {
  const double l = std::log10(f / 28.0);
  return -2.0 * l * l - 5.4;
}

double hata_suburban_loss(double f, double hb, double hm, double dKm) {
  return hata_urban_loss(f, hb, hm, dKm) + hata_suburban_correction(f);
}

double rayleigh_gain(Rng& rng) {
  std::exponential_distribution<double> exp1(1.0);
  double g = exp1(rng);
  while (!(g > 0.0)) g = exp1(rng);
  return g;
}

double received_power(double txDbw, double lossDb, double gain) {
  return txDbw - lossDb + 10.0 * std::log10(gain);
}

double thermal_noise_power(double temperatureK, double bandwidthHz) {
  return 10.0 * std::log10(kBoltzmann * temperatureK * bandwidthHz);
}

double TowerGeometry::distance_to(double roadPosition) const {
  return std::hypot(roadPosition - alongRoad, offset);
}

std::vector<TowerGeometry> make_towers(const ScenarioConfig& config) {
  std::vector<TowerGeometry> towers;
  towers.reserve(static_cast<std::size_t>(config.nPuTowers));
  const double slot = config.roadLength / config.nPuTowers;
  for (int k = 0; k < config.nPuTowers; ++k) {
    TowerGeometry t;
    t.towerId = k;
    t.alongRoad = (k + 0.5) * slot;
    t.offset = config.towerOffset;
    t.firstChannel = k * config.channelsPerTower;
    t.channelCount = config.channelsPerTower;
    towers.push_back(t);
  }
  return towers;
}

LinkBudget median_link(const ScenarioConfig& config, const TowerGeometry& tower,
                       double roadPosition) {
  LinkBudget link;
  link.txPower = config.txPowerPu;
  link.pathLoss = hata_suburban_loss(config.frequencyMhz, config.baseStationHeight,
                                     config.mobileHeight, tower.distance_to(roadPosition) / 1000.0);
  link.fadingGain = 1.0;
  link.rxPower = received_power(link.txPower, link.pathLoss, link.fadingGain);
  return link;
}

} // namespace crvanet
