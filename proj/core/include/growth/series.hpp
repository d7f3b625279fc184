#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace growth {

/// Ordered (time, size) observations of a growing quantity.
///
/// Times are absolute calendar years (fractional years allowed, spacing may
/// be irregular). Sizes are strictly positive so that the reciprocal and
/// logarithmic views are always defined. Immutable once constructed.
class TimeSeries {
 public:
  /// Validates and builds a series. Throws GrowthError with
  /// LengthMismatch, SeriesTooShort, NonMonotonicTime or NonPositiveValue;
  /// the latter two name the offending index.
  static TimeSeries make(std::vector<double> times, std::vector<double> values);

  std::size_t size() const noexcept { return times_.size(); }
  std::span<const double> times() const noexcept { return times_; }
  std::span<const double> values() const noexcept { return values_; }
  double time(std::size_t i) const { return times_.at(i); }
  double value(std::size_t i) const { return values_.at(i); }

  /// Copy with every value multiplied by k (k > 0).
  TimeSeries scaled(double k) const;

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  TimeSeries(std::vector<double> times, std::vector<double> values)
      : times_(std::move(times)), values_(std::move(values)) {}

  std::vector<double> times_;
  std::vector<double> values_;
};

enum class TransformKind { Identity, Reciprocal, Log };

/// Plain (time, value) sequence. Unlike TimeSeries the values may be zero or
/// negative (ln S for S <= 1).
struct Sequence {
  std::vector<double> times;
  std::vector<double> values;

  std::size_t size() const noexcept { return times.size(); }
};

double apply_transform(TransformKind kind, double value) noexcept;

/// Pointwise 1/S or ln S with times unchanged; Identity copies the values.
Sequence transform_series(const TimeSeries& ts, TransformKind kind);

TimeSeries make_series(std::vector<double> times, std::vector<double> values);

}  // namespace growth
