#include "growth/rates.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "growth/error.hpp"

namespace growth {

namespace {

constexpr std::string_view kModule = "rates";

LocalEstimate fit_at(std::span<const double> t, std::span<const double> y,
                     std::size_t lo, std::size_t center, const SmootherConfig& cfg) {
  const auto w = static_cast<Eigen::Index>(cfg.window);
  const auto terms = static_cast<Eigen::Index>(cfg.degree) + 1;
  const double t0 = t[center];

  // Abscissae shifted to the evaluation point and scaled into [-1, 1].
  double half = 0.0;
  for (Eigen::Index j = 0; j < w; ++j) {
    half = std::max(half, std::abs(t[lo + j] - t0));
  }
  if (!(half > 0.0)) {
    throw GrowthError(Errc::DegenerateWindow, kModule, "window times coincide", center);
  }

  Eigen::MatrixXd design(w, terms);
  Eigen::VectorXd rhs(w);
  for (Eigen::Index j = 0; j < w; ++j) {
    const double x = (t[lo + j] - t0) / half;
    double p = 1.0;
    for (Eigen::Index k = 0; k < terms; ++k) {
      design(j, k) = p;
      p *= x;
    }
    rhs(j) = y[lo + j];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < terms) {
    throw GrowthError(Errc::DegenerateWindow, kModule, "local design matrix is rank deficient",
                      center);
  }
  const Eigen::VectorXd coef = qr.solve(rhs);
  return {coef(0), coef(1) / half};
}

}  // namespace

void validate(const SmootherConfig& cfg) {
  if (cfg.window < 3 || cfg.window % 2 == 0) {
    throw GrowthError(Errc::InvalidConfig, kModule,
                      "window must be odd and >= 3, got " + std::to_string(cfg.window));
  }
  if (cfg.degree < 1 || cfg.degree >= cfg.window) {
    throw GrowthError(Errc::InvalidConfig, kModule,
                      "degree must satisfy 1 <= degree < window, got " +
                          std::to_string(cfg.degree));
  }
}

std::vector<LocalEstimate> local_polynomial_fit(std::span<const double> t,
                                                std::span<const double> y,
                                                const SmootherConfig& cfg) {
  validate(cfg);
  const std::size_t n = t.size();
  const auto w = static_cast<std::size_t>(cfg.window);
  if (y.size() != n) {
    throw GrowthError(Errc::InvalidConfig, kModule, "time and value spans differ in length");
  }
  if (n < w) {
    throw GrowthError(Errc::SeriesTooShort, kModule,
                      std::to_string(n) + " points, window needs " + std::to_string(w));
  }

  const std::size_t half = w / 2;
  std::vector<LocalEstimate> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = std::min(i > half ? i - half : 0, n - w);
    out.push_back(fit_at(t, y, lo, i, cfg));
  }
  return out;
}

RateSeries direct_rates(const TimeSeries& ts) {
  const std::size_t n = ts.size();
  if (n < 2) throw GrowthError(Errc::SeriesTooShort, kModule, "need at least 2 points");
  RateSeries out;
  out.times.reserve(n - 1);
  out.rates.reserve(n - 1);
  out.sizes.reserve(n - 1);
  const auto t = ts.times();
  const auto s = ts.values();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    out.times.push_back(t[i + 1]);
    out.rates.push_back((s[i + 1] - s[i]) / (s[i] * (t[i + 1] - t[i])));
    out.sizes.push_back(s[i + 1]);
  }
  return out;
}

RateSeries smoothed_rates(const TimeSeries& ts, const SmootherConfig& cfg) {
  const auto fits = local_polynomial_fit(ts.times(), ts.values(), cfg);
  RateSeries out;
  out.times.assign(ts.times().begin(), ts.times().end());
  out.sizes.assign(ts.values().begin(), ts.values().end());
  out.rates.reserve(fits.size());
  for (const auto& f : fits) out.rates.push_back(f.slope / f.value);
  return out;
}

RateSeries transform_rates(const TimeSeries& ts, TransformKind kind, const SmootherConfig& cfg) {
  Sequence f = transform_series(ts, kind);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.values[i] == 0.0) {
      throw GrowthError(Errc::ZeroTransformedValue, kModule,
                        "F(S) is zero; its growth rate is undefined", i);
    }
  }
  const auto fits = local_polynomial_fit(f.times, f.values, cfg);
  RateSeries out;
  out.times = std::move(f.times);
  out.sizes = std::move(f.values);
  out.rates.reserve(fits.size());
  for (const auto& e : fits) out.rates.push_back(e.slope / e.value);
  return out;
}

}  // namespace growth
