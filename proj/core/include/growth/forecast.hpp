#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "growth/models.hpp"

namespace growth {

enum class PointFlag {
  Valid,
  BeyondSingularity,  ///< inside the guard band before t_s, or past it
  Overflow,           ///< size exceeds double range
  OutsideDomain,      ///< before the model's domain starts (e.g. a + bt <= 0)
};

std::string_view flag_name(PointFlag f) noexcept;

inline constexpr double kDefaultGuardFraction = 0.001;

/// A model evaluated over a time grid. `values[i]` is present iff
/// `flags[i] == PointFlag::Valid`.
struct Projection {
  GrowthModel model;
  std::vector<double> grid;
  std::vector<std::optional<double>> values;
  std::vector<PointFlag> flags;
  ModelDiagnostics diagnostics;

  friend bool operator==(const Projection&, const Projection&) = default;
};

/// Evaluates a normalized model on `grid`. A point t is flagged
/// BeyondSingularity when t >= t_s - guard_fraction * (t_s - grid.front()).
/// Errors: UnnormalizedModel, EmptyGrid, NonIncreasingGrid, InvalidConfig
/// (guard_fraction outside (0, 1)).
Projection project(const GrowthModel& m, std::span<const double> grid,
                   double guard_fraction = kDefaultGuardFraction);

/// Side-by-side projections of several scenarios on a shared grid.
struct Comparison {
  std::vector<double> grid;
  std::vector<Projection> columns;
};

Comparison compare(std::span<const GrowthModel> models, std::span<const double> grid,
                   double guard_fraction = kDefaultGuardFraction);

/// start, start + step, ... up to and including `end` (within 1e-9 step).
std::vector<double> make_grid(double start, double end, double step);

}  // namespace growth
