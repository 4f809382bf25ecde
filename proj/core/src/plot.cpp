#include "crvanet/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace crvanet {

std::string_view to_string(Metric metric) {
  switch (metric) {
  case Metric::Allocations: return "allocations";
  case Metric::FalseAlarms: return "false_alarms";
  case Metric::Misdetections: return "misdetections";
  }
  return "unknown";
}

namespace {

double metric_of(const SweepRow& r, Metric m) {
  switch (m) {
  case Metric::Allocations: return static_cast<double>(r.allocations);
  case Metric::FalseAlarms: return static_cast<double>(r.falseAlarms);
  case Metric::Misdetections: return static_cast<double>(r.misdetections);
  }
  return 0.0;
}

std::string_view axis_label(SweepAxis axis) {
  switch (axis) {
  case SweepAxis::Vehicles: return "Number of vehicles";
  case SweepAxis::Channels: return "Number of channels";
  case SweepAxis::Speed: return "Average speed (km/h)";
  }
  return "";
}

std::string_view metric_label(Metric m) {
  switch (m) {
  case Metric::Allocations: return "Channel allocations";
  case Metric::FalseAlarms: return "False alarms";
  case Metric::Misdetections: return "Misdetections";
  }
  return "";
}

constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

// 1, 2 or 5 times a power of ten, giving roughly `target` intervals
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  const double nice = f <= 1.0 ? 1.0 : f <= 2.0 ? 2.0 : f <= 5.0 ? 5.0 : 10.0;
  return nice * mag;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

} // namespace

std::vector<Series> summarize(const SweepTable& table, Metric metric) {
  std::vector<Scheme> order;
  std::map<std::pair<int, double>, std::vector<double>> samples;
  for (const SweepRow& r : table.rows) {
    if (std::find(order.begin(), order.end(), r.scheme) == order.end()) order.push_back(r.scheme);
    samples[{static_cast<int>(r.scheme), r.axisValue}].push_back(metric_of(r, metric));
  }
  std::vector<Series> out;
  for (const Scheme s : order) {
    Series series;
    series.scheme = s;
    for (const auto& [key, vals] : samples) {
      if (key.first != static_cast<int>(s)) continue;
      SeriesPoint p;
      p.x = key.second;
      p.min = *std::min_element(vals.begin(), vals.end());
      p.max = *std::max_element(vals.begin(), vals.end());
      double sum = 0.0;
      for (const double v : vals) sum += v;
      p.mean = sum / static_cast<double>(vals.size());
      series.points.push_back(p);
    }
    out.push_back(std::move(series));
  }
  return out;
}

std::string render_svg(const SweepTable& table, Metric metric) {
  const std::vector<Series> series = summarize(table, metric);
  double xMin = INFINITY, xMax = -INFINITY, yMax = 0.0;
  for (const Series& s : series) {
    for (const SeriesPoint& p : s.points) {
      xMin = std::min(xMin, p.x);
      xMax = std::max(xMax, p.x);
      yMax = std::max(yMax, p.max);
    }
  }
  if (!(xMax > xMin)) throw std::invalid_argument("a plot needs at least two axis values");

  const double yStep = nice_step(yMax > 0.0 ? yMax : 1.0, 5);
  const double yTop = yStep * std::ceil((yMax > 0.0 ? yMax : 1.0) / yStep);

  constexpr double W = 640, H = 420, L = 80, R = 150, T = 40, B = 60;
  const double pw = W - L - R, ph = H - T - B;
  auto sx = [&](double x) { return L + (x - xMin) / (xMax - xMin) * pw; };
  auto sy = [&](double y) { return T + ph - y / yTop * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << L + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
    << metric_label(metric) << " vs " << to_string(table.axis) << "</text>\n";

  for (double y = 0.0; y <= yTop + yStep * 1e-9; y += yStep) {
    o << "<line x1=\"" << L << "\" y1=\"" << num(sy(y)) << "\" x2=\"" << L + pw << "\" y2=\""
      << num(sy(y)) << "\" stroke=\"#ddd\"/>\n";
    o << "<text x=\"" << L - 6 << "\" y=\"" << num(sy(y) + 4) << "\" text-anchor=\"end\">" << num(y)
      << "</text>\n";
  }
  std::vector<double> xs;
  for (const Series& s : series) {
    for (const SeriesPoint& p : s.points) xs.push_back(p.x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (const double x : xs) {
    o << "<text x=\"" << num(sx(x)) << "\" y=\"" << T + ph + 18 << "\" text-anchor=\"middle\">"
      << format_number(x) << "</text>\n";
  }
  o << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  o << "<text x=\"" << L + pw / 2 << "\" y=\"" << H - 16 << "\" text-anchor=\"middle\">"
    << axis_label(table.axis) << "</text>\n";
  o << "<text transform=\"translate(20," << T + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
    << metric_label(metric) << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const Series& s = series[i];
    const char* color = kColors[i % std::size(kColors)];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const SeriesPoint& p : s.points) o << num(sx(p.x)) << ',' << num(sy(p.mean)) << ' ';
    o << "\"/>\n";
    for (const SeriesPoint& p : s.points) {
      const double x = sx(p.x);
      o << "<line x1=\"" << num(x) << "\" y1=\"" << num(sy(p.min)) << "\" x2=\"" << num(x)
        << "\" y2=\"" << num(sy(p.max)) << "\" stroke=\"" << color << "\"/>\n";
      o << "<circle cx=\"" << num(x) << "\" cy=\"" << num(sy(p.mean)) << "\" r=\"3\" fill=\""
        << color << "\"/>\n";
    }
    const double ly = T + 14 + 20.0 * static_cast<double>(i);
    o << "<line x1=\"" << L + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << L + pw + 36
      << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << L + pw + 42 << "\" y=\"" << ly + 4 << "\">" << to_string(s.scheme)
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::vector<std::filesystem::path> render_plots(const SweepTable& table,
                                                const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> paths;
  for (const Metric m : {Metric::Allocations, Metric::FalseAlarms, Metric::Misdetections}) {
    const std::string svg = render_svg(table, m);
    std::filesystem::path p =
        dir / ("fig_" + std::string(to_string(table.axis)) + "_" + std::string(to_string(m)) + ".svg");
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + p.string() + " for writing");
    out << svg;
    if (!out) throw std::runtime_error("failed writing " + p.string());
    paths.push_back(std::move(p));
  }
  return paths;
}

} // namespace crvanet
