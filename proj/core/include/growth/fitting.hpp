#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "growth/models.hpp"
#include "growth/rates.hpp"
#include "growth/series.hpp"

namespace growth {

/// Inclusive time window [t_start, t_end].
struct FitWindow {
  double t_start;
  double t_end;

  bool contains(double t) const noexcept { return t >= t_start && t <= t_end; }
};

/// Throws InvalidWindow unless t_start < t_end.
void validate(const FitWindow& w);

struct Point {
  double x;
  double y;
};

/// Ordinary least-squares line y = intercept + slope * x.
struct LineFit {
  double intercept;
  double slope;
  double rss;
  std::size_t n;
  /// Standard errors from the residual variance; +inf when n <= 2.
  double intercept_stderr;
  double slope_stderr;

  friend bool operator==(const LineFit&, const LineFit&) = default;
};

/// Least-squares line through the origin, y = slope * x.
struct ThroughOriginFit {
  double slope;
  double rss;
  std::size_t n;
};

enum class FitSpace {
  RateVsTime,
  RateVsSize,
  ReciprocalRateVsTime,
  LogRateVsTime,
  LogSizeVsTime,
  ReciprocalSizeVsTime,
};

std::string_view space_name(FitSpace s) noexcept;
std::optional<FitSpace> parse_space(std::string_view name) noexcept;

struct FitResult {
  GrowthModel model;
  LineFit line;
  FitWindow window;
  FitSpace space;
  /// Only for RateVsSize: the companion fit R = bS (hyperbolic growth).
  std::optional<ThroughOriginFit> through_origin;
  /// Only for RateVsSize: |a| < 2 SE(a), i.e. the through-origin model is
  /// statistically indistinguishable from the displaced one.
  bool intercept_negligible = false;

  /// `model`, or the Hyperbolic model from the through-origin fit when the
  /// intercept is negligible.
  GrowthModel preferred_model() const;
};

/// OLS over the points whose x lies in `window` (all points if absent).
/// Errors: TooFewPoints (< 2 points), DegenerateX (all x equal).
LineFit fit_line(std::span<const Point> points, std::optional<FitWindow> window = std::nullopt);

ThroughOriginFit fit_through_origin(std::span<const Point> points);

/// R = a + bt -> LinearRateTime (unnormalized).
FitResult fit_rate_time(const RateSeries& rs, FitWindow window);

/// R = a + bS -> LinearRateSize (unnormalized), plus the through-origin
/// companion R = bS. Samples are selected by time.
FitResult fit_rate_size(const RateSeries& rs, FitWindow window);

/// 1/R = a + bt -> HyperbolicRateTime (unnormalized). A zero slope maps to
/// Exponential with r = 1/a.
FitResult fit_reciprocal_rate(const RateSeries& rs, FitWindow window);

/// ln R = a + bt -> ExpRateTime (unnormalized).
FitResult fit_log_rate(const RateSeries& rs, FitWindow window);

/// ln S = ln C + rt -> Exponential (normalized by the fit).
FitResult fit_exponential(const TimeSeries& ts, FitWindow window);

/// 1/S = C - bt -> Hyperbolic (normalized by the fit).
FitResult fit_hyperbolic(const TimeSeries& ts, FitWindow window);

/// Sum of squared size residuals of a normalized model over the window,
/// for comparing fits made in different transformed spaces.
double size_space_rss(const GrowthModel& m, const TimeSeries& ts, FitWindow window);

}  // namespace growth
