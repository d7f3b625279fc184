#include "growth/series.hpp"

#include <cmath>
#include <string>

#include "growth/error.hpp"

namespace growth {

namespace {
constexpr std::string_view kModule = "series";
}

TimeSeries TimeSeries::make(std::vector<double> times, std::vector<double> values) {
  if (times.size() != values.size()) {
    throw GrowthError(Errc::LengthMismatch, kModule,
                      std::to_string(times.size()) + " times vs " +
                          std::to_string(values.size()) + " values");
  }
  if (times.size() < 2) {
    throw GrowthError(Errc::SeriesTooShort, kModule, "need at least 2 observations");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i])) {
      throw GrowthError(Errc::NonMonotonicTime, kModule, "time is not finite", i);
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw GrowthError(Errc::NonMonotonicTime, kModule, "times must be strictly increasing", i);
    }
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw GrowthError(Errc::NonPositiveValue, kModule, "values must be finite and > 0", i);
    }
  }
  return TimeSeries(std::move(times), std::move(values));
}

TimeSeries TimeSeries::scaled(double k) const {
  std::vector<double> v(values_.begin(), values_.end());
  for (auto& x : v) x *= k;
  return make(times_, std::move(v));
}

TimeSeries make_series(std::vector<double> times, std::vector<double> values) {
  return TimeSeries::make(std::move(times), std::move(values));
}

double apply_transform(TransformKind kind, double value) noexcept {
  switch (kind) {
    case TransformKind::Identity: return value;
    case TransformKind::Reciprocal: return 1.0 / value;
    case TransformKind::Log: return std::log(value);
  }
  return value;
}

Sequence transform_series(const TimeSeries& ts, TransformKind kind) {
  Sequence out;
  out.times.assign(ts.times().begin(), ts.times().end());
  out.values.reserve(ts.size());
  for (double v : ts.values()) out.values.push_back(apply_transform(kind, v));
  return out;
}

}  // namespace growth
