#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "growth/series.hpp"

namespace growth {

/// Empirical growth rates R = (1/S) dS/dt sampled at increasing times.
///
/// Rates are per-year fractions (0.025 means 2.5 %/yr) and may be negative.
/// `sizes` holds the size each rate belongs to; for rates of a transformed
/// quantity F(S) it holds F, which can be of either sign.
struct RateSeries {
  std::vector<double> times;
  std::vector<double> rates;
  std::vector<double> sizes;

  std::size_t size() const noexcept { return times.size(); }
};

/// Sliding-window least-squares polynomial used for interpolated gradients.
struct SmootherConfig {
  int window = 5;  ///< odd point count, >= 3
  int degree = 2;  ///< 1 <= degree < window
};

/// Throws GrowthError(InvalidConfig) if the window is even, < 3, or not
/// larger than the degree.
void validate(const SmootherConfig& cfg);

/// Forward-difference rates: R[i+1] = (S[i+1] - S[i]) / (S[i] (t[i+1] - t[i])),
/// reported at t[i+1] with size S[i+1]. Output has one sample fewer than
/// the input.
RateSeries direct_rates(const TimeSeries& ts);

/// Rates from locally fitted polynomials: at every sample a polynomial of
/// `cfg.degree` is fitted to the `cfg.window` nearest points (centred, or
/// shifted inwards at the ends) and the rate is p'(t) / p(t).
RateSeries smoothed_rates(const TimeSeries& ts, const SmootherConfig& cfg = {});

/// Growth rate of F(S) = (1/F) dF/dt using the smoothed estimator on F.
/// Throws ZeroTransformedValue if any F(S) is exactly zero.
RateSeries transform_rates(const TimeSeries& ts, TransformKind kind,
                           const SmootherConfig& cfg = {});

/// Value and first derivative of the local polynomial at one sample.
struct LocalEstimate {
  double value;
  double slope;
};

/// Local polynomial estimates at every sample of (t, y). Works on any real
/// sequence; t must be strictly increasing and hold at least `cfg.window`
/// points.
std::vector<LocalEstimate> local_polynomial_fit(std::span<const double> t,
                                                std::span<const double> y,
                                                const SmootherConfig& cfg);

}  // namespace growth
