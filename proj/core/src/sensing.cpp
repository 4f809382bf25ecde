#include "crvanet/sensing.hpp"

#include <cmath>
#include <string>

#include <boost/math/distributions/normal.hpp>

namespace crvanet {

std::string_view to_string(Occupancy o) {
  return o == Occupancy::Vacant ? "vacant" : "occupied";
}

std::string_view to_string(OutcomeClass c) {
  switch (c) {
  case OutcomeClass::CorrectDetection: return "correct";
  case OutcomeClass::FalseAlarm: return "false-alarm";
  case OutcomeClass::Misdetection: return "misdetection";
  }
  return "unknown";
}

double q_inverse(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("probability must lie in (0, 1)");
  const boost::math::normal_distribution<double> standard;
  return boost::math::quantile(boost::math::complement(standard, p));
}

double detection_threshold(const DetectorParams& params) {
  if (params.nSamples < 50) {
    throw std::invalid_argument("energy detector needs at least 50 samples per window");
  }
  if (!(params.targetPfa > 0.0 && params.targetPfa < 1.0)) {
    throw std::invalid_argument("targetPfa must lie in (0, 1)");
  }
  return params.noisePower *
         (1.0 + q_inverse(params.targetPfa) / std::sqrt(static_cast<double>(params.nSamples)));
}

DetectorParams make_detector(int nSamples, double noisePowerW, double targetPfa) {
  DetectorParams p;
  p.nSamples = nSamples;
  p.noisePower = noisePowerW;
  p.targetPfa = targetPfa;
  p.threshold = detection_threshold(p);
  return p;
}

double energy_statistic(double snrLinear, const DetectorParams& params, Rng& rng) {
  std::normal_distribution<double> z(0.0, 1.0);
  const double mean = params.noisePower * (1.0 + snrLinear);
  return mean * (1.0 + z(rng) / std::sqrt(static_cast<double>(params.nSamples)));
}

OutcomeClass classify_outcome(Occupancy decision, Occupancy truth) {
  if (decision == truth) return OutcomeClass::CorrectDetection;
  return decision == Occupancy::Occupied ? OutcomeClass::FalseAlarm : OutcomeClass::Misdetection;
}

int SensingContext::tower_of(ChannelId c) const {
  if (c < 0 || static_cast<std::size_t>(c) >= towerOfChannel.size()) {
    throw std::out_of_range("unknown channel " + std::to_string(c));
  }
  return towerOfChannel[static_cast<std::size_t>(c)];
}

double SensingContext::pu_median_snr(int tower, double roadPosition) const {
  const TowerGeometry& t = towers[static_cast<std::size_t>(tower)];
  const double loss = hata_suburban_loss(frequencyMhz, baseHeight, mobileHeight,
                                         t.distance_to(roadPosition) / 1000.0);
  return std::pow(10.0, (received_power(txPowerPu, loss, 1.0) - noiseDbw) / 10.0);
}

SensingContext make_sensing_context(const ScenarioConfig& config) {
  SensingContext ctx;
  ctx.noiseDbw = thermal_noise_power(config.noiseTemperature, config.channelBandwidth);
  ctx.detector =
      make_detector(config.nSamples, std::pow(10.0, ctx.noiseDbw / 10.0), config.targetPfa);
  ctx.towers = make_towers(config);
  ctx.towerOfChannel.assign(static_cast<std::size_t>(config.nChannels), 0);
  for (const TowerGeometry& t : ctx.towers) {
    for (ChannelId c = t.firstChannel; c < t.firstChannel + t.channelCount; ++c) {
      ctx.towerOfChannel[static_cast<std::size_t>(c)] = t.towerId;
    }
  }
  ctx.txPowerPu = config.txPowerPu;
  ctx.suSnrLinear = std::pow(10.0, config.suSensedSnrDb / 10.0);
  ctx.sensingRange = config.sensingRange;
  ctx.frequencyMhz = config.frequencyMhz;
  ctx.baseHeight = config.baseStationHeight;
  ctx.mobileHeight = config.mobileHeight;
  return ctx;
}

SensingOutcome sense_channel(const SensingContext& ctx, const VehicleState& observer,
                             ChannelId channel, const ChannelMap& map,
                             std::span<const VehicleState> fleet, Rng& fading, Rng& noise,
                             Tick now, double puMedianSnr) {
  const int tower = ctx.tower_of(channel);
  if (!map.valid(channel)) throw std::out_of_range("unknown channel " + std::to_string(channel));

  double snr = 0.0;
  bool occupied = false;
  if (map.pu_active(channel)) {
    occupied = true;
    const double median =
        puMedianSnr >= 0.0 ? puMedianSnr : ctx.pu_median_snr(tower, observer.position);
    snr += median * rayleigh_gain(fading);
  }
  if (const auto holder = map.holder(channel); holder && *holder != observer.id) {
    const VehicleState& h = fleet[static_cast<std::size_t>(*holder)];
    if (std::abs(h.position - observer.position) <= ctx.sensingRange) {
      occupied = true;
      snr += ctx.suSnrLinear;
    }
  }

  SensingOutcome out;
  out.observer = observer.id;
  out.channel = channel;
  out.truth = occupied ? Occupancy::Occupied : Occupancy::Vacant;
  out.statistic = energy_statistic(snr, ctx.detector, noise);
  out.threshold = ctx.detector.threshold;
  out.decision = out.statistic >= out.threshold ? Occupancy::Occupied : Occupancy::Vacant;
  out.time = now;
  return out;
}

} // namespace crvanet
