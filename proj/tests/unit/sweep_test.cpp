#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <unistd.h>

#include "crvanet/plot.hpp"
#include "crvanet/sweep.hpp"
#include "property.hpp"

using namespace crvanet;

namespace {

SweepSpec quick_spec(SweepAxis axis, std::vector<double> values) {
  SweepSpec s;
  s.base = default_scenario();
  s.base.runningTime = 0.1;
  s.axis = axis;
  s.values = std::move(values);
  s.schemes = {Scheme::Standalone, Scheme::Cooperative, Scheme::Proposed};
  s.seeds = 5;
  return s;
}

std::string csv_of(const SweepTable& t) {
  std::ostringstream out;
  write_csv(out, t);
  return out.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("crvanet_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

} // namespace

TEST(Sweep, CardinalityAndOrder) {
  const SweepTable t = run_sweep(quick_spec(SweepAxis::Vehicles, {10, 20, 30, 40, 50}), 1);
  ASSERT_EQ(t.rows.size(), 75u);
  std::size_t i = 0;
  for (const double v : {10.0, 20.0, 30.0, 40.0, 50.0}) {
    for (const Scheme s : {Scheme::Standalone, Scheme::Cooperative, Scheme::Proposed}) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed, ++i) {
        EXPECT_EQ(t.rows[i].axisValue, v);
        EXPECT_EQ(t.rows[i].scheme, s);
        EXPECT_EQ(t.rows[i].seed, seed);
      }
    }
  }
}

TEST(Sweep, JobsDoNotChangeOutput) {
  const SweepSpec spec = quick_spec(SweepAxis::Channels, {20, 60, 100});
  const std::string serial = csv_of(run_sweep(spec, 1));
  EXPECT_EQ(csv_of(run_sweep(spec, 4)), serial);
  EXPECT_EQ(csv_of(run_sweep(spec, 45)), serial);
}

TEST(Sweep, PointConfigs) {
  SweepSpec spec = quick_spec(SweepAxis::Speed, {120});
  ScenarioConfig c = sweep_point_config(spec, 120, Scheme::Cooperative, 3);
  EXPECT_NEAR(c.avgSpeed, 120 / 3.6, 1e-12);
  EXPECT_EQ(c.scheme, Scheme::Cooperative);
  EXPECT_EQ(c.seed, 3u);

  spec.axis = SweepAxis::Channels;
  c = sweep_point_config(spec, 40, Scheme::Proposed, 1);
  EXPECT_EQ(c.nChannels, 40);
  EXPECT_EQ(c.channelsPerTower, 20);
  EXPECT_NO_THROW(validate(c));

  spec.axis = SweepAxis::Vehicles;
  EXPECT_EQ(sweep_point_config(spec, 30, Scheme::Proposed, 1).nVehicles, 30);
}

TEST(Sweep, SpecValidation) {
  EXPECT_THROW(quick_spec(SweepAxis::Vehicles, {}).validate(), ValidationError);
  EXPECT_THROW(quick_spec(SweepAxis::Vehicles, {20, 10}).validate(), ValidationError);
  EXPECT_THROW(quick_spec(SweepAxis::Vehicles, {10, 10}).validate(), ValidationError);
  EXPECT_THROW(quick_spec(SweepAxis::Vehicles, {10.5}).validate(), ValidationError);
  EXPECT_THROW(quick_spec(SweepAxis::Channels, {21}).validate(), ValidationError);
  EXPECT_THROW(quick_spec(SweepAxis::Speed, {-5}).validate(), ValidationError);
  SweepSpec s = quick_spec(SweepAxis::Vehicles, {10});
  s.seeds = 0;
  EXPECT_THROW(s.validate(), ValidationError);
  s = quick_spec(SweepAxis::Vehicles, {10});
  s.schemes.clear();
  EXPECT_THROW(s.validate(), ValidationError);
  EXPECT_NO_THROW(quick_spec(SweepAxis::Speed, {60.5, 99}).validate());
}

TEST(Sweep, AxisNames) {
  for (const SweepAxis a : {SweepAxis::Vehicles, SweepAxis::Channels, SweepAxis::Speed}) {
    EXPECT_EQ(parse_axis(to_string(a)), a);
  }
  EXPECT_THROW(parse_axis("density"), std::invalid_argument);
}

TEST(Sweep, JobsFromEnvironment) {
  ::unsetenv(kJobsEnv);
  EXPECT_EQ(sweep_jobs(5), 5);
  ::setenv(kJobsEnv, "3", 1);
  EXPECT_EQ(sweep_jobs(5), 3);
  ::setenv(kJobsEnv, "zero", 1);
  EXPECT_THROW(sweep_jobs(5), std::invalid_argument);
  ::setenv(kJobsEnv, "0", 1);
  EXPECT_THROW(sweep_jobs(5), std::invalid_argument);
  ::unsetenv(kJobsEnv);
}

TEST(Csv, EmptyTableIsHeaderOnly) {
  EXPECT_EQ(csv_of(SweepTable{}),
            "axis_value,scheme,seed,allocations,false_alarms,misdetections,sensing_events\n");
}

TEST(Csv, OneRow) {
  SweepTable t;
  t.rows.push_back(SweepRow{50, Scheme::Proposed, 7, 120, 3, 0, 800});
  EXPECT_EQ(csv_of(t),
            "axis_value,scheme,seed,allocations,false_alarms,misdetections,sensing_events\n"
            "50,proposed,7,120,3,0,800\n");
}

TEST(Csv, RoundTrip) {
  prop::for_all(71, 200, [](prop::Gen& g, int) {
    SweepTable t;
    t.axis = SweepAxis::Speed;
    const int n = g.integer(0, 30);
    for (int i = 0; i < n; ++i) {
      SweepRow r;
      r.axisValue = g.coin() ? g.integer(1, 200) : g.real(1.0, 200.0);
      r.scheme = static_cast<Scheme>(g.integer(0, 2));
      r.seed = static_cast<std::uint64_t>(g.integer(1, 1000));
      r.allocations = g.integer(0, 100000);
      r.falseAlarms = g.integer(0, 100000);
      r.misdetections = g.integer(0, 1000);
      r.sensingEvents = g.integer(0, 1000000);
      t.rows.push_back(r);
    }
    std::istringstream in(csv_of(t));
    EXPECT_EQ(read_csv(in, SweepAxis::Speed), t);
  });
}

TEST(Csv, FileWriteAndIoError) {
  const auto dir = scratch_dir("csv");
  SweepTable t;
  t.rows.push_back(SweepRow{10, Scheme::Standalone, 1, 1, 2, 3, 6});
  write_csv(dir / "sweep.csv", t);
  std::ifstream in(dir / "sweep.csv", std::ios::binary);
  EXPECT_EQ(read_csv(in, SweepAxis::Vehicles), t);
  try {
    write_csv(dir / "missing" / "sweep.csv", t);
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("missing"), std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

TEST(Plot, SeedStatistics) {
  prop::for_all(72, 100, [](prop::Gen& g, int) {
    SweepTable t;
    for (const double v : {10.0, 20.0, 30.0}) {
      for (const Scheme s : {Scheme::Standalone, Scheme::Proposed}) {
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
          t.rows.push_back(SweepRow{v, s, seed, g.integer(0, 500), g.integer(0, 500), g.integer(0, 5), 0});
        }
      }
    }
    for (const Metric m : {Metric::Allocations, Metric::FalseAlarms, Metric::Misdetections}) {
      const auto series = summarize(t, m);
      ASSERT_EQ(series.size(), 2u);
      for (const Series& s : series) {
        ASSERT_EQ(s.points.size(), 3u);
        for (const SeriesPoint& p : s.points) {
          EXPECT_LE(p.min, p.mean);
          EXPECT_LE(p.mean, p.max);
        }
      }
    }
  });
}

TEST(Plot, RendersFilesWithoutClipping) {
  const SweepTable t = run_sweep(quick_spec(SweepAxis::Vehicles, {10, 30}), 1);
  const auto dir = scratch_dir("plot");
  const auto files = render_plots(t, dir);
  ASSERT_EQ(files.size(), 3u);
  EXPECT_EQ(files[0].filename(), "fig_vehicles_allocations.svg");
  EXPECT_EQ(files[1].filename(), "fig_vehicles_false_alarms.svg");
  EXPECT_EQ(files[2].filename(), "fig_vehicles_misdetections.svg");
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string svg = ss.str();
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    // every data marker sits inside the plot frame (y in [40, 360], x in [80, 490])
    const std::regex circle("<circle cx=\"([0-9.e+-]+)\" cy=\"([0-9.e+-]+)\"");
    int markers = 0;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), circle); it != std::sregex_iterator(); ++it) {
      const double x = std::stod((*it)[1]), y = std::stod((*it)[2]);
      EXPECT_GE(x, 80.0 - 1e-9);
      EXPECT_LE(x, 490.0 + 1e-9);
      EXPECT_GE(y, 40.0 - 1e-9);
      EXPECT_LE(y, 360.0 + 1e-9);
      ++markers;
    }
    EXPECT_EQ(markers, 6); // 3 schemes x 2 values
  }
  std::filesystem::remove_all(dir);
}

TEST(Plot, ProposedMisdetectionSeriesIsFlatZero) {
  const SweepTable t = run_sweep(quick_spec(SweepAxis::Vehicles, {10, 50}), 1);
  for (const Series& s : summarize(t, Metric::Misdetections)) {
    if (s.scheme != Scheme::Proposed) continue;
    for (const SeriesPoint& p : s.points) EXPECT_EQ(p.max, 0.0);
  }
}

TEST(Plot, SingleSchemeOneSeries) {
  SweepTable t;
  t.rows.push_back(SweepRow{1, Scheme::Cooperative, 1, 5, 1, 0, 9});
  t.rows.push_back(SweepRow{2, Scheme::Cooperative, 1, 6, 1, 0, 9});
  const std::string svg = render_svg(t, Metric::Allocations);
  EXPECT_EQ(summarize(t, Metric::Allocations).size(), 1u);
  std::size_t lines = 0;
  for (std::size_t p = svg.find("<polyline"); p != std::string::npos; p = svg.find("<polyline", p + 1)) ++lines;
  EXPECT_EQ(lines, 1u);
}

TEST(Plot, NeedsTwoAxisValues) {
  SweepTable t;
  t.rows.push_back(SweepRow{1, Scheme::Cooperative, 1, 5, 1, 0, 9});
  EXPECT_THROW(render_svg(t, Metric::Allocations), std::invalid_argument);
}
