#include <gtest/gtest.h>

#include <cmath>

#include "crvanet/propagation.hpp"
#include "property.hpp"

using namespace crvanet;

TEST(Noise, ReferenceReceiver) {
  EXPECT_NEAR(thermal_noise_power(500.0, 7e6), -133.16, 0.01);
}

TEST(Noise, PerHertzAtRoomTemperature) {
  EXPECT_NEAR(thermal_noise_power(290.0, 1.0), -203.975, 1e-3);
}

TEST(Noise, DoublingBandwidthAddsThreeDb) {
  EXPECT_NEAR(thermal_noise_power(500.0, 14e6) - thermal_noise_power(500.0, 7e6),
              10.0 * std::log10(2.0), 1e-12);
}

TEST(Hata, UrbanGoldenValue) {
  // hand-evaluated: 69.55 + 26.16 log 150 - 13.82 log 50 - a(1.5) + (44.9 - 6.55 log 50) log 10
  EXPECT_NEAR(hata_urban_loss(150.0, 50.0, 1.5, 10.0), 136.8227, 1e-4);
}

TEST(Hata, DistanceDecade) {
  const double slope = 44.9 - 6.55 * std::log10(50.0);
  EXPECT_NEAR(slope, 33.772, 1e-3);
  EXPECT_NEAR(hata_urban_loss(150.0, 50.0, 1.5, 10.0) - hata_urban_loss(150.0, 50.0, 1.5, 1.0),
              slope, 1e-9);
}

TEST(Hata, DomainErrors) {
  EXPECT_THROW(hata_urban_loss(100.0, 50.0, 1.5, 10.0), DomainError);
  EXPECT_THROW(hata_urban_loss(1600.0, 50.0, 1.5, 10.0), DomainError);
  EXPECT_THROW(hata_urban_loss(150.0, 20.0, 1.5, 10.0), DomainError);
  EXPECT_THROW(hata_urban_loss(150.0, 50.0, 11.0, 10.0), DomainError);
  EXPECT_THROW(hata_urban_loss(150.0, 50.0, 1.5, 0.5), DomainError);
  EXPECT_THROW(hata_suburban_loss(150.0, 50.0, 1.5, 21.0), DomainError);
  try {
    hata_urban_loss(100.0, 50.0, 1.5, 10.0);
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("frequency"), std::string::npos);
  }
}

TEST(Hata, SuburbanCorrection) {
  EXPECT_NEAR(hata_suburban_correction(150.0), -6.4627, 1e-4);
  EXPECT_EQ(hata_suburban_correction(28.0), -5.4);
  EXPECT_NEAR(hata_suburban_loss(150.0, 50.0, 1.5, 10.0), 130.36, 0.01);
}

TEST(Hata, SuburbanIdentityAndOrdering) {
  prop::for_all(21, 5000, [](prop::Gen& g, int) {
    const double f = g.real(150.0, 1500.0), hb = g.real(30.0, 200.0), hm = g.real(1.0, 10.0),
                 d = g.real(1.0, 20.0);
    const double urban = hata_urban_loss(f, hb, hm, d);
    const double sub = hata_suburban_loss(f, hb, hm, d);
    const double l = std::log10(f / 28.0);
    EXPECT_NEAR(sub - urban, -2.0 * l * l - 5.4, 1e-9);
    EXPECT_LT(sub, urban);
    EXPECT_GT(sub, 0.0);
  });
}

TEST(Hata, MonotoneInDistanceAndHeight) {
  prop::for_all(22, 3000, [](prop::Gen& g, int) {
    const double f = g.real(150.0, 1500.0), hb = g.real(30.0, 190.0), hm = g.real(1.0, 10.0),
                 d = g.real(1.0, 19.0);
    EXPECT_LT(hata_suburban_loss(f, hb, hm, d), hata_suburban_loss(f, hb, hm, d + g.real(0.01, 1.0)));
    EXPECT_GT(hata_suburban_loss(f, hb, hm, d), hata_suburban_loss(f, hb + g.real(0.1, 10.0), hm, d));
  });
}

TEST(Rayleigh, UnitMeanAndExponentialCdf) {
  Rng rng(17);
  const int n = 200000;
  double sum = 0.0;
  int below = 0;
  for (int i = 0; i < n; ++i) {
    const double g = rayleigh_gain(rng);
    ASSERT_GT(g, 0.0);
    sum += g;
    below += g < 0.105;
  }
  EXPECT_NEAR(sum / n, 1.0, 0.01);
  EXPECT_NEAR(static_cast<double>(below) / n, 1.0 - std::exp(-0.105), 0.003);
}

TEST(Rayleigh, StreamUnaffectedByOtherStreams) {
  Rng fading = make_stream(5, Stream::Fading, 0, 3);
  std::vector<double> expected;
  for (int i = 0; i < 50; ++i) expected.push_back(rayleigh_gain(fading));

  Rng mobility = make_stream(123456, Stream::Mobility, 3);
  for (int i = 0; i < 1000; ++i) mobility();
  Rng again = make_stream(5, Stream::Fading, 0, 3);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(rayleigh_gain(again), expected[static_cast<std::size_t>(i)]);
}

TEST(Link, ReceivedPower) {
  EXPECT_DOUBLE_EQ(received_power(20.0, 130.4, 1.0), -110.4);
  EXPECT_NEAR(received_power(20.0, 130.4, 0.5), -110.4 - 3.0103, 1e-4);
}

TEST(Link, MedianBudgetAtTowerFoot) {
  const ScenarioConfig c = default_scenario();
  const auto towers = make_towers(c);
  const LinkBudget b = median_link(c, towers[0], towers[0].alongRoad);
  EXPECT_NEAR(b.pathLoss, 130.36, 0.01);
  EXPECT_DOUBLE_EQ(b.rxPower, b.txPower - b.pathLoss);
  // about 22.8 dB above the noise floor
  EXPECT_NEAR(b.rxPower - thermal_noise_power(500.0, 7e6), 22.80, 0.01);
}

TEST(Towers, DisjointCoverAndDistance) {
  prop::for_all(23, 200, [](prop::Gen& g, int) {
    const ScenarioConfig c = g.scenario();
    const auto towers = make_towers(c);
    ASSERT_EQ(static_cast<int>(towers.size()), c.nPuTowers);
    for (ChannelId ch = 0; ch < c.nChannels; ++ch) {
      int owners = 0;
      for (const TowerGeometry& t : towers) owners += t.owns(ch);
      EXPECT_EQ(owners, 1);
    }
    for (const TowerGeometry& t : towers) {
      EXPECT_GE(t.distance_to(g.real(0.0, c.roadLength)), t.offset);
      EXPECT_GE(t.alongRoad, 0.0);
      EXPECT_LE(t.alongRoad, c.roadLength);
    }
  });
}
