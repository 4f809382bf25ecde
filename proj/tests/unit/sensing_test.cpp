#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "crvanet/sensing.hpp"
#include "property.hpp"

using namespace crvanet;

namespace {

// Energy of N complex samples of noise (power sigma2) plus a Gaussian signal
// (power snr * sigma2), averaged: the textbook detector, sample by sample.
double brute_force_energy(double snr, double sigma2, int n, Rng& rng) {
  std::normal_distribution<double> z(0.0, 1.0);
  const double sn = std::sqrt(sigma2 / 2.0);
  const double ss = std::sqrt(snr * sigma2 / 2.0);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const std::complex<double> x(sn * z(rng) + ss * z(rng), sn * z(rng) + ss * z(rng));
    acc += std::norm(x);
  }
  return acc / n;
}

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

template <typename F>
Moments moments(int trials, F&& draw) {
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < trials; ++i) {
    const double x = draw();
    s += x;
    s2 += x * x;
  }
  const double m = s / trials;
  return {m, s2 / trials - m * m};
}

} // namespace

TEST(Threshold, Examples) {
  EXPECT_DOUBLE_EQ(make_detector(100, 1.0, 0.5).threshold, 1.0);
  // Q^-1(0.1) = 1.2816 from the normal table
  EXPECT_NEAR(make_detector(100, 1.0, 0.1).threshold, 1.12816, 1e-5);
  EXPECT_NEAR(q_inverse(0.1), 1.281552, 1e-6);
  EXPECT_NEAR(q_inverse(0.025), 1.959964, 1e-6);
}

TEST(Threshold, Errors) {
  EXPECT_THROW(make_detector(100, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(make_detector(100, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(make_detector(49, 1.0, 0.1), std::invalid_argument);
}

TEST(Threshold, AboveNoiseBelowHalf) {
  prop::for_all(31, 1000, [](prop::Gen& g, int) {
    const double sigma2 = std::pow(10.0, g.real(-16.0, 0.0));
    const double pfa = g.real(1e-4, 0.499);
    EXPECT_GT(make_detector(g.integer(50, 1000), sigma2, pfa).threshold, sigma2);
  });
}

TEST(EnergyStatistic, MomentsMatchSampleBySampleDetector) {
  Rng a(1), b(2);
  for (const double snr : {0.0, 1.0, 10.0}) {
    const DetectorParams det = make_detector(100, 1.0, 0.1);
    const Moments ours = moments(40000, [&] { return energy_statistic(snr, det, a); });
    const Moments ref = moments(40000, [&] { return brute_force_energy(snr, 1.0, 100, b); });
    EXPECT_NEAR(ours.mean, 1.0 + snr, 0.01 * (1.0 + snr));
    EXPECT_NEAR(ours.mean, ref.mean, 0.02 * (1.0 + snr));
    EXPECT_NEAR(ours.var / ref.var, 1.0, 0.05);
  }
}

TEST(EnergyStatistic, VarianceShrinksWithWindow) {
  Rng rng(3);
  const Moments n100 = moments(100000, [&] { return energy_statistic(0.0, make_detector(100, 1.0, 0.1), rng); });
  const Moments n400 = moments(100000, [&] { return energy_statistic(0.0, make_detector(400, 1.0, 0.1), rng); });
  EXPECT_NEAR(n100.var / n400.var, 4.0, 0.15);
}

TEST(EnergyStatistic, NoiseOnlyFalseAlarmRate) {
  Rng rng(4);
  const DetectorParams det = make_detector(100, 2.0e-14, 0.1);
  const int m = 100000;
  int alarms = 0;
  for (int i = 0; i < m; ++i) alarms += energy_statistic(0.0, det, rng) >= det.threshold;
  const double tol = 3.0 * std::sqrt(0.1 * 0.9 / m);
  EXPECT_NEAR(static_cast<double>(alarms) / m, 0.1, tol);
}

TEST(EnergyStatistic, ThresholdMonotonicity) {
  Rng rng(5);
  const DetectorParams det = make_detector(100, 1.0, 0.1);
  std::vector<std::pair<double, bool>> recorded; // (statistic, truly occupied)
  std::bernoulli_distribution busy(0.5);
  for (int i = 0; i < 20000; ++i) {
    const bool occupied = busy(rng);
    recorded.emplace_back(energy_statistic(occupied ? 0.3 : 0.0, det, rng), occupied);
  }
  int lastFa = 1 << 30, lastMd = -1;
  for (double lambda = 0.8; lambda <= 1.6; lambda += 0.02) {
    int fa = 0, md = 0;
    for (const auto& [s, occ] : recorded) {
      const bool decideOccupied = s >= lambda;
      fa += decideOccupied && !occ;
      md += !decideOccupied && occ;
    }
    EXPECT_LE(fa, lastFa);
    EXPECT_GE(md, lastMd);
    lastFa = fa;
    lastMd = md;
  }
}

TEST(EnergyStatistic, DetectionImprovesWithSnr) {
  Rng rng(6);
  const DetectorParams det = make_detector(100, 1.0, 0.1);
  double last = 0.0;
  for (const double db : {-15.0, -10.0, -5.0, 0.0}) {
    int hits = 0;
    for (int i = 0; i < 50000; ++i) {
      hits += energy_statistic(std::pow(10.0, db / 10.0), det, rng) >= det.threshold;
    }
    const double pd = hits / 50000.0;
    EXPECT_GT(pd, last);
    last = pd;
  }
  EXPECT_GT(last, 0.999);
}

TEST(Classify, Table) {
  EXPECT_EQ(classify_outcome(Occupancy::Vacant, Occupancy::Occupied), OutcomeClass::Misdetection);
  EXPECT_EQ(classify_outcome(Occupancy::Occupied, Occupancy::Vacant), OutcomeClass::FalseAlarm);
  EXPECT_EQ(classify_outcome(Occupancy::Vacant, Occupancy::Vacant), OutcomeClass::CorrectDetection);
  EXPECT_EQ(classify_outcome(Occupancy::Occupied, Occupancy::Occupied),
            OutcomeClass::CorrectDetection);
}

class SenseChannel : public ::testing::Test {
protected:
  SenseChannel() : config(default_scenario()), ctx(make_sensing_context(config)), map(config.nChannels) {
    for (int i = 0; i < 3; ++i) {
      VehicleState v;
      v.id = i;
      fleet.push_back(v);
    }
    fleet[0].position = 500.0;
    fleet[1].position = 850.0; // 350 m away
    fleet[2].position = 1000.0; // 500 m away
  }

  SensingOutcome sense(ChannelId c, double median = -1.0) {
    return sense_channel(ctx, fleet[0], c, map, fleet, fading, noise, 7, median);
  }

  ScenarioConfig config;
  SensingContext ctx;
  ChannelMap map;
  std::vector<VehicleState> fleet;
  Rng fading{11}, noise{12};
};

TEST_F(SenseChannel, IdleChannelIsVacantTruth) {
  const SensingOutcome o = sense(3);
  EXPECT_EQ(o.truth, Occupancy::Vacant);
  EXPECT_EQ(o.observer, 0);
  EXPECT_EQ(o.channel, 3);
  EXPECT_EQ(o.time, 7);
  EXPECT_EQ(o.decision == Occupancy::Occupied, o.statistic >= o.threshold);
}

TEST_F(SenseChannel, PuOnAirIsOccupiedTruth) {
  map.set_pu_active(60, true);
  int occupied = 0;
  for (int i = 0; i < 1000; ++i) {
    const SensingOutcome o = sense(60);
    EXPECT_EQ(o.truth, Occupancy::Occupied);
    occupied += o.decision == Occupancy::Occupied;
  }
  EXPECT_GT(occupied, 990);
}

TEST_F(SenseChannel, SuHolderRange) {
  map.set_holder(5, 1);
  EXPECT_EQ(sense(5).truth, Occupancy::Occupied);
  map.set_holder(5, 2);
  EXPECT_EQ(sense(5).truth, Occupancy::Vacant);
  map.set_holder(5, 0); // own transmission is not a signal to detect
  EXPECT_EQ(sense(5).truth, Occupancy::Vacant);
}

TEST_F(SenseChannel, DeepFadeMisdetects) {
  map.set_pu_active(0, true);
  int misses = 0;
  for (int i = 0; i < 200; ++i) {
    misses += sense(0, 1e-9).classification() == OutcomeClass::Misdetection;
  }
  EXPECT_GT(misses, 150);
}

TEST_F(SenseChannel, FalseAlarmOnIdleChannel) {
  int alarms = 0;
  for (int i = 0; i < 20000; ++i) alarms += sense(1).classification() == OutcomeClass::FalseAlarm;
  EXPECT_NEAR(alarms / 20000.0, 0.1, 0.01);
}

TEST_F(SenseChannel, UnknownChannel) {
  EXPECT_THROW(sense(100), std::out_of_range);
  EXPECT_THROW(sense(-1), std::out_of_range);
}

TEST_F(SenseChannel, MisdetectionRateMatchesIntegral) {
  // P(vacant | on air) = E_z[ P(g < (lambda'/(1 + z/sqrt N) - 1) / snr) ], g ~ Exp(1),
  // lambda' = lambda / sigma^2, integrated over the standard normal z.
  const double snr = ctx.pu_median_snr(0, fleet[0].position);
  const double lam = ctx.detector.threshold / ctx.detector.noisePower;
  const double rootN = std::sqrt(static_cast<double>(ctx.detector.nSamples));
  double expected = 0.0;
  const double dz = 1e-4;
  for (double z = -9.0; z < 9.0; z += dz) {
    const double scale = 1.0 + z / rootN;
    if (scale <= 0.0) continue;
    const double gmax = (lam / scale - 1.0) / snr;
    if (gmax <= 0.0) continue;
    expected += std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI) * (1.0 - std::exp(-gmax)) * dz;
  }
  EXPECT_NEAR(expected, 7.6e-4, 0.5e-4);

  map.set_pu_active(0, true);
  const int m = 400000;
  int misses = 0;
  for (int i = 0; i < m; ++i) misses += sense(0).decision == Occupancy::Vacant;
  const double sd = std::sqrt(expected / m);
  EXPECT_NEAR(static_cast<double>(misses) / m, expected, 4.0 * sd);
}

TEST_F(SenseChannel, DecisionMatchesThresholdProperty) {
  prop::for_all(33, 2000, [&](prop::Gen& g, int) {
    const ChannelId c = g.integer(0, config.nChannels - 1);
    map.set_pu_active(c, g.coin());
    if (g.coin()) map.set_holder(c, g.integer(0, 2)); else map.clear_holder(c);
    fleet[0].position = g.real(0.0, config.roadLength);
    const SensingOutcome o = sense(c);
    EXPECT_EQ(o.decision == Occupancy::Occupied, o.statistic >= o.threshold);
    const bool suVisible = map.holder(c) && *map.holder(c) != 0 &&
        std::abs(fleet[static_cast<std::size_t>(*map.holder(c))].position - fleet[0].position) <= 400.0;
    EXPECT_EQ(o.truth == Occupancy::Occupied, map.pu_active(c) || suVisible);
  });
}
