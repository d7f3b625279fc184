#pragma once

// Test-only helpers. Nothing here calls into the closed forms or the fitting
// code it is used to check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace growth::testing {

inline double rel_err(double got, double want) {
  if (want == 0.0) return std::abs(got);
  return std::abs(got - want) / std::abs(want);
}

inline std::vector<double> years(double start, double end, double step = 1.0) {
  std::vector<double> t;
  for (double x = start; x <= end + 1e-9; x += step) t.push_back(x);
  return t;
}

inline std::vector<double> sample(const std::vector<double>& t, const std::function<double(double)>& f) {
  std::vector<double> v;
  v.reserve(t.size());
  for (double x : t) v.push_back(f(x));
  return v;
}

inline double sample_variance(std::span<const double> v) {
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / (n - 1.0);
}

struct BruteLine {
  double a;
  double b;
  double rss;
};

/// Minimizes sum (y - a - bx)^2 by successively refined grid search.
/// Slow and independent of any closed-form normal equations.
inline BruteLine brute_force_line(std::span<const double> x, std::span<const double> y) {
  auto rss = [&](double a, double b) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - a - b * x[i];
      s += r * r;
    }
    return s;
  };
  double ca = 0.0, cb = 0.0, half = 10.0;
  for (int level = 0; level < 40; ++level) {
    double best = std::numeric_limits<double>::infinity(), ba = ca, bb = cb;
    constexpr int kSteps = 20;
    for (int i = -kSteps; i <= kSteps; ++i) {
      for (int j = -kSteps; j <= kSteps; ++j) {
        const double a = ca + half * i / kSteps;
        const double b = cb + half * j / kSteps;
        const double s = rss(a, b);
        if (s < best) {
          best = s;
          ba = a;
          bb = b;
        }
      }
    }
    ca = ba;
    cb = bb;
    half *= 0.5;
  }
  return {ca, cb, rss(ca, cb)};
}

/// Exponential series with multiplicative Gaussian noise of relative size sigma.
inline std::vector<double> noisy_exponential(const std::vector<double>& t, double r, double sigma,
                                             std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> v;
  v.reserve(t.size());
  for (double x : t) v.push_back(1000.0 * std::exp(r * (x - t.front())) * (1.0 + sigma * z(gen)));
  return v;
}

/// Path to the frozen world-GDP fixture (GROWTH_GDP_FIXTURE overrides).
inline std::string gdp_fixture_path() {
  if (const char* env = std::getenv("GROWTH_GDP_FIXTURE")) return env;
  return GROWTH_TEST_DATA_DIR "/world_gdp_constant_2005usd.csv";
}

}  // namespace growth::testing
