#include "growth/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "growth/error.hpp"

namespace growth {

namespace {

constexpr std::string_view kModule = "oracle";

std::optional<double> trajectory_singularity(const GrowthModel& m, double t0, double S0) {
  try {
    return diagnostics(normalize(m, t0, S0)).singularity_time;
  } catch (const GrowthError& e) {
    if (e.code() == Errc::UnreachableAnchor || e.code() == Errc::Overflow) {
      return diagnostics(m).singularity_time;
    }
    if (e.code() == Errc::OutsideDomain) {
      throw GrowthError(Errc::DomainViolation, kModule, "start point outside the model domain");
    }
    throw;
  }
}

// Vanishes somewhere on [lo, hi]?
bool has_root(double k0, double k1, double lo, double hi) {
  if (k1 == 0.0) return k0 == 0.0;
  const double root = -k0 / k1;
  return root >= lo && root <= hi;
}

}  // namespace

std::vector<double> integrate_rate_ode(const GrowthModel& m, double t0, double S0,
                                       std::span<const double> grid, int steps_per_interval) {
  if (!(S0 > 0.0) || !std::isfinite(S0)) {
    throw GrowthError(Errc::NonPositiveStart, kModule, "initial size must be finite and > 0");
  }
  if (steps_per_interval < 1) {
    throw GrowthError(Errc::InvalidConfig, kModule, "steps per interval must be >= 1");
  }
  if (grid.empty() || grid.front() != t0) {
    throw GrowthError(Errc::InvalidConfig, kModule, "grid must start at t0");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw GrowthError(Errc::InvalidConfig, kModule, "grid must be strictly increasing", i);
    }
  }
  if (const auto ts = trajectory_singularity(m, t0, S0)) {
    // Slack absorbs rounding between t_s computed from C and from the anchor.
    const double limit = *ts - (kOracleGuardFraction - 1e-9) * (*ts - t0);
    if (*ts <= t0 || grid.back() > limit) {
      throw GrowthError(Errc::DomainViolation, kModule,
                        "grid enters the guard band before the singularity at " +
                            std::to_string(*ts));
    }
  }

  auto f = [&m](double t, double s) { return s * defining_rate(m, t, s); };

  std::vector<double> out;
  out.reserve(grid.size());
  out.push_back(S0);
  double s = S0;
  try {
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const double h = (grid[i] - grid[i - 1]) / steps_per_interval;
      for (int k = 0; k < steps_per_interval; ++k) {
        const double t = grid[i - 1] + k * h;
        const double k1 = f(t, s);
        const double k2 = f(t + 0.5 * h, s + 0.5 * h * k1);
        const double k3 = f(t + 0.5 * h, s + 0.5 * h * k2);
        const double k4 = f(t + h, s + h * k3);
        s += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      out.push_back(s);
    }
  } catch (const GrowthError& e) {
    if (e.code() != Errc::OutsideDomain) throw;
    throw GrowthError(Errc::DomainViolation, kModule, e.what());
  }
  return out;
}

OdeReport compare_with_closed_form(const GrowthModel& m, std::span<const double> grid,
                                   int steps_per_interval) {
  if (grid.empty()) throw GrowthError(Errc::InvalidConfig, kModule, "empty grid");
  const double s0 = evaluate(m, grid.front());
  const auto numeric = integrate_rate_ode(m, grid.front(), s0, grid, steps_per_interval);

  OdeReport rep;
  rep.model_kind = std::string(kind_name(m.kind()));
  for (const GrowthModel* cur = &m; const auto* w = cur->get_if<LogWrapped>();) {
    cur = w->inner.get();
    rep.model_kind += ":";
    rep.model_kind += kind_name(cur->kind());
  }
  rep.grid_size = grid.size();
  for (std::size_t i = 1; i < grid.size(); ++i) {
    rep.step = std::max(rep.step, (grid[i] - grid[i - 1]) / steps_per_interval);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double exact = evaluate(m, grid[i]);
    rep.max_rel_error = std::max(rep.max_rel_error, std::abs(numeric[i] - exact) / std::abs(exact));
  }
  return rep;
}

std::vector<double> guarded_grid(const GrowthModel& m, double t_start, double t_end,
                                 std::size_t points) {
  if (points < 2 || !(t_end > t_start)) {
    throw GrowthError(Errc::InvalidConfig, kModule, "grid needs >= 2 points and t_end > t_start");
  }
  double end = t_end;
  if (const auto ts = diagnostics(m).singularity_time; ts && *ts > t_start) {
    end = std::min(end, *ts - kOracleGuardFraction * (*ts - t_start));
  }
  std::vector<double> g(points);
  const double h = (end - t_start) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) g[i] = t_start + static_cast<double>(i) * h;
  g.back() = end;
  return g;
}

double simpson(const std::function<double(double)>& f, double x0, double x1, int panels) {
  if (panels < 1) throw GrowthError(Errc::InvalidConfig, kModule, "panels must be >= 1");
  const double h = (x1 - x0) / panels;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double l = x0 + i * h;
    const double r = (i + 1 == panels) ? x1 : l + h;
    sum += f(l) + 4.0 * f(0.5 * (l + r)) + f(r);
  }
  return sum * h / 6.0;
}

double check_partial_fraction(double a, double b, double c, double e, double x0, double x1,
                              int panels) {
  const double delta = c * b - a * e;
  if (delta == 0.0) {
    throw GrowthError(Errc::ZeroDelta, kModule, "cb - ae = 0: factors are proportional");
  }
  const double lo = std::min(x0, x1), hi = std::max(x0, x1);
  if (has_root(a, b, lo, hi) || has_root(c, e, lo, hi)) {
    throw GrowthError(Errc::SingularIntegrand, kModule, "a factor vanishes inside [x0, x1]");
  }
  const auto integrand = [=](double x) { return 1.0 / ((a + b * x) * (c + e * x)); };
  const auto antiderivative = [=](double x) {
    return std::log(std::abs((a + b * x) / (c + e * x))) / delta;
  };
  const double numeric = simpson(integrand, x0, x1, panels);
  return std::abs(numeric - (antiderivative(x1) - antiderivative(x0)));
}

}  // namespace growth

namespace growth {

std::vector<OracleCase> reference_cases() {
  std::vector<OracleCase> cases;
  cases.push_back({"exponential r=0.025", normalize(exponential(0.025), 2000.0, 1.0), 2000.0, 2100.0});
  cases.push_back({"linear-rate-time gdp", normalize(linear_rate_time(3.895e-1, -1.805e-4), 2014.0, 5.82e13),
                   1980.0, 2300.0});
  cases.push_back({"poly-rate-time quadratic", normalize(poly_rate_solution({0.03, -2e-4, 3e-6}), 0.0, 1.0),
                   0.0, 100.0});
  cases.push_back({"hyperbolic", hyperbolic(2.155e-3, 4.376), 1900.0, 2100.0});
  cases.push_back({"pseudo-hyperbolic", linear_rate_size(4.475e-2, 2.155e-3, 1.437e38), 1900.0, 2100.0});
  cases.push_back({"logistic", normalize(linear_rate_size(0.03, -3e-5), 1950.0, 100.0), 1950.0, 2200.0});
  cases.push_back({"hyperbolic-rate-time b>0", normalize(hyperbolic_rate_time(-170.0, 0.1), 2000.0, 1.0),
                   2000.0, 2100.0});
  cases.push_back({"hyperbolic-rate-time b<0", normalize(hyperbolic_rate_time(230.0, -0.1), 2000.0, 1.0),
                   2000.0, 2400.0});
  cases.push_back({"exp-rate-time", normalize(exp_rate_time(std::log(0.02) - 20.0, 0.01), 2000.0, 1.0),
                   2000.0, 2100.0});
  cases.push_back({"log-wrapped linear-rate-time",
                   normalize(log_wrap(linear_rate_time(0.045, -2e-5)), 2000.0, 1000.0), 2000.0, 2100.0});
  cases.push_back({"log-wrapped logistic",
                   normalize(log_wrap(linear_rate_size(0.05, -0.01)), 2000.0, std::exp(2.0)), 2000.0,
                   2200.0});
  return cases;
}

}  // namespace growth
