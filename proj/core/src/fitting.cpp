#include "growth/fitting.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "growth/error.hpp"

namespace growth {

namespace {

constexpr std::string_view kModule = "fitting";

std::vector<Point> select(std::span<const double> t, std::span<const double> x,
                          std::span<const double> y, const FitWindow& w) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (w.contains(t[i])) pts.push_back({x[i], y[i]});
  }
  return pts;
}

void require_points(std::size_t n) {
  if (n < 2) {
    throw GrowthError(Errc::TooFewPoints, kModule,
                      std::to_string(n) + " point(s) in window, need at least 2");
  }
}

}  // namespace

void validate(const FitWindow& w) {
  if (!(w.t_start < w.t_end)) {
    throw GrowthError(Errc::InvalidWindow, kModule, "window start must precede its end");
  }
}

std::string_view space_name(FitSpace s) noexcept {
  switch (s) {
    case FitSpace::RateVsTime: return "rate-vs-time";
    case FitSpace::RateVsSize: return "rate-vs-size";
    case FitSpace::ReciprocalRateVsTime: return "reciprocal-rate-vs-time";
    case FitSpace::LogRateVsTime: return "log-rate-vs-time";
    case FitSpace::LogSizeVsTime: return "log-size-vs-time";
    case FitSpace::ReciprocalSizeVsTime: return "reciprocal-size-vs-time";
  }
  return "unknown";
}

std::optional<FitSpace> parse_space(std::string_view name) noexcept {
  for (auto s : {FitSpace::RateVsTime, FitSpace::RateVsSize, FitSpace::ReciprocalRateVsTime,
                 FitSpace::LogRateVsTime, FitSpace::LogSizeVsTime,
                 FitSpace::ReciprocalSizeVsTime}) {
    if (space_name(s) == name) return s;
  }
  return std::nullopt;
}

LineFit fit_line(std::span<const Point> points, std::optional<FitWindow> window) {
  std::vector<Point> sel;
  if (window) {
    validate(*window);
    for (const auto& p : points) {
      if (window->contains(p.x)) sel.push_back(p);
    }
    points = sel;
  }
  const std::size_t n = points.size();
  require_points(n);

  const double dn = static_cast<double>(n);
  double mx = 0.0, my = 0.0;
  for (const auto& p : points) {
    mx += p.x;
    my += p.y;
  }
  mx /= dn;
  my /= dn;

  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : points) {
    const double dx = p.x - mx;
    sxx += dx * dx;
    sxy += dx * (p.y - my);
  }
  if (!(sxx > 0.0)) {
    throw GrowthError(Errc::DegenerateX, kModule, "all abscissae are equal");
  }

  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double rss = 0.0;
  for (const auto& p : points) {
    const double r = (p.y - my) - slope * (p.x - mx);
    rss += r * r;
  }

  double se_a = std::numeric_limits<double>::infinity();
  double se_b = se_a;
  if (n > 2) {
    const double s2 = rss / (dn - 2.0);
    se_b = std::sqrt(s2 / sxx);
    se_a = std::sqrt(s2 * (1.0 / dn + mx * mx / sxx));
  }
  return {intercept, slope, rss, n, se_a, se_b};
}

ThroughOriginFit fit_through_origin(std::span<const Point> points) {
  require_points(points.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : points) {
    sxx += p.x * p.x;
    sxy += p.x * p.y;
  }
  if (!(sxx > 0.0)) throw GrowthError(Errc::DegenerateX, kModule, "all abscissae are zero");
  const double b = sxy / sxx;
  double rss = 0.0;
  for (const auto& p : points) {
    const double r = p.y - b * p.x;
    rss += r * r;
  }
  return {b, rss, points.size()};
}

GrowthModel FitResult::preferred_model() const {
  if (space == FitSpace::RateVsSize && intercept_negligible && through_origin) {
    return Hyperbolic{through_origin->slope, std::nullopt};
  }
  return model;
}

FitResult fit_rate_time(const RateSeries& rs, FitWindow window) {
  validate(window);
  const auto pts = select(rs.times, rs.times, rs.rates, window);
  const LineFit line = fit_line(pts);
  return {LinearRateTime{line.intercept, line.slope, std::nullopt}, line, window,
          FitSpace::RateVsTime, std::nullopt, false};
}

FitResult fit_rate_size(const RateSeries& rs, FitWindow window) {
  validate(window);
  const auto pts = select(rs.times, rs.sizes, rs.rates, window);
  const LineFit line = fit_line(pts);
  const ThroughOriginFit origin = fit_through_origin(pts);
  // a = 0 is exactly the hyperbolic equation R = bS.
  GrowthModel model = line.intercept == 0.0
                          ? GrowthModel(Hyperbolic{line.slope, std::nullopt})
                          : GrowthModel(LinearRateSize{line.intercept, line.slope, std::nullopt});
  const bool negligible = std::abs(line.intercept) < 2.0 * line.intercept_stderr &&
                          std::isfinite(line.intercept_stderr);
  return {std::move(model), line, window, FitSpace::RateVsSize, origin, negligible};
}

FitResult fit_reciprocal_rate(const RateSeries& rs, FitWindow window) {
  validate(window);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (!window.contains(rs.times[i])) continue;
    if (rs.rates[i] == 0.0) {
      throw GrowthError(Errc::ZeroRate, kModule, "zero rate has no reciprocal", i);
    }
    pts.push_back({rs.times[i], 1.0 / rs.rates[i]});
  }
  const LineFit line = fit_line(pts);
  GrowthModel model = line.slope == 0.0
                          ? GrowthModel(Exponential{1.0 / line.intercept, std::nullopt})
                          : GrowthModel(HyperbolicRateTime{line.intercept, line.slope, std::nullopt});
  return {std::move(model), line, window, FitSpace::ReciprocalRateVsTime, std::nullopt, false};
}

FitResult fit_log_rate(const RateSeries& rs, FitWindow window) {
  validate(window);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (!window.contains(rs.times[i])) continue;
    if (!(rs.rates[i] > 0.0)) {
      throw GrowthError(Errc::NonPositiveRate, kModule, "log of a non-positive rate", i);
    }
    pts.push_back({rs.times[i], std::log(rs.rates[i])});
  }
  const LineFit line = fit_line(pts);
  return {ExpRateTime{line.intercept, line.slope, std::nullopt}, line, window,
          FitSpace::LogRateVsTime, std::nullopt, false};
}

FitResult fit_exponential(const TimeSeries& ts, FitWindow window) {
  validate(window);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (window.contains(ts.time(i))) pts.push_back({ts.time(i), std::log(ts.value(i))});
  }
  const LineFit line = fit_line(pts);
  return {Exponential{line.slope, Scale::from_log(line.intercept, 1)}, line, window,
          FitSpace::LogSizeVsTime, std::nullopt, false};
}

FitResult fit_hyperbolic(const TimeSeries& ts, FitWindow window) {
  validate(window);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (window.contains(ts.time(i))) pts.push_back({ts.time(i), 1.0 / ts.value(i)});
  }
  const LineFit line = fit_line(pts);
  return {Hyperbolic{-line.slope, line.intercept}, line, window, FitSpace::ReciprocalSizeVsTime,
          std::nullopt, false};
}

double size_space_rss(const GrowthModel& m, const TimeSeries& ts, FitWindow window) {
  validate(window);
  double rss = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!window.contains(ts.time(i))) continue;
    const double r = ts.value(i) - evaluate(m, ts.time(i));
    rss += r * r;
  }
  return rss;
}

}  // namespace growth
