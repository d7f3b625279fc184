#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "growth/models.hpp"

namespace growth {

/// Independent checks of the closed forms: fixed-step RK4 on each model's
/// defining rate equation, and Simpson quadrature of the partial-fraction
/// integral behind the size-dependent solutions.

/// Oracle grids stop this fraction of the remaining span short of t_s.
inline constexpr double kOracleGuardFraction = 0.05;

struct OdeReport {
  std::string model_kind;
  std::size_t grid_size = 0;
  double step = 0.0;           ///< largest RK4 step used
  double max_rel_error = 0.0;  ///< max over the grid of |RK4 - closed form| / |closed form|
};

/// RK4 solution of dS/dt = S * f(t, S) from (t0, S0), sampled at `grid`
/// (grid[0] must equal t0). Each grid interval is split into
/// `steps_per_interval` equal steps.
/// Errors: NonPositiveStart, DomainViolation (grid reaches the guard band
/// before the singularity of the trajectory through (t0, S0), or leaves the
/// rate's domain), InvalidConfig.
std::vector<double> integrate_rate_ode(const GrowthModel& m, double t0, double S0,
                                       std::span<const double> grid, int steps_per_interval);

/// Integrates a normalized model from its own value at grid[0] and compares
/// with evaluate() at every grid point.
OdeReport compare_with_closed_form(const GrowthModel& m, std::span<const double> grid,
                                   int steps_per_interval);

/// `points` equally spaced years from t_start towards t_end, with the end
/// pulled back to t_s - 5% (t_s - t_start) when the normalized model has a
/// singularity before t_end.
std::vector<double> guarded_grid(const GrowthModel& m, double t_start, double t_end,
                                 std::size_t points);

/// Composite Simpson rule with `panels` panels (2 * panels subintervals).
double simpson(const std::function<double(double)>& f, double x0, double x1, int panels);

/// | Simpson integral of 1/((a+bx)(c+ex)) over [x0, x1]
///   - (1/D) [ln((a+bx)/(c+ex))]_{x0}^{x1} |, with D = cb - ae.
/// Errors: ZeroDelta, SingularIntegrand (a factor vanishes on [x0, x1]).
double check_partial_fraction(double a, double b, double c, double e, double x0, double x1,
                              int panels);

/// A normalized model with the span it is checked over.
struct OracleCase {
  std::string label;
  GrowthModel model;
  double t_start;
  double t_end;
};

/// Sample parameters covering every catalog variant, including the
/// pseudo-hyperbolic / hyperbolic pair with singularities near 2031 and the
/// world-GDP linear-rate model that peaks in the 2150s.
std::vector<OracleCase> reference_cases();

}  // namespace growth
