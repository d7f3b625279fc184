#include "growth/forecast.hpp"

#include <cmath>
#include <string>

#include "growth/error.hpp"

namespace growth {

namespace {
constexpr std::string_view kModule = "forecast";

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw GrowthError(Errc::EmptyGrid, kModule, "projection grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw GrowthError(Errc::NonIncreasingGrid, kModule, "grid must be strictly increasing", i);
    }
  }
}
}  // namespace

std::string_view flag_name(PointFlag f) noexcept {
  switch (f) {
    case PointFlag::Valid: return "valid";
    case PointFlag::BeyondSingularity: return "beyond_singularity";
    case PointFlag::Overflow: return "overflow";
    case PointFlag::OutsideDomain: return "outside_domain";
  }
  return "unknown";
}

Projection project(const GrowthModel& m, std::span<const double> grid, double guard_fraction) {
  if (!(guard_fraction > 0.0 && guard_fraction < 1.0)) {
    throw GrowthError(Errc::InvalidConfig, kModule, "guard fraction must lie in (0, 1)");
  }
  if (!m.is_normalized()) {
    throw GrowthError(Errc::UnnormalizedModel, kModule, "normalize the model before projecting");
  }
  check_grid(grid);

  Projection p{m, {grid.begin(), grid.end()}, {}, {}, diagnostics(m)};
  p.values.reserve(grid.size());
  p.flags.reserve(grid.size());

  const auto ts = p.diagnostics.singularity_time;
  const double cutoff = ts ? *ts - guard_fraction * (*ts - grid.front()) : 0.0;

  for (double t : grid) {
    if (ts && (t >= *ts || t >= cutoff)) {
      p.values.emplace_back(std::nullopt);
      p.flags.push_back(PointFlag::BeyondSingularity);
      continue;
    }
    try {
      p.values.emplace_back(evaluate(m, t));
      p.flags.push_back(PointFlag::Valid);
    } catch (const GrowthError& e) {
      PointFlag flag;
      switch (e.code()) {
        case Errc::Overflow: flag = PointFlag::Overflow; break;
        case Errc::OutsideDomain: flag = PointFlag::OutsideDomain; break;
        default: throw;
      }
      p.values.emplace_back(std::nullopt);
      p.flags.push_back(flag);
    }
  }
  return p;
}

Comparison compare(std::span<const GrowthModel> models, std::span<const double> grid,
                   double guard_fraction) {
  if (models.empty()) {
    throw GrowthError(Errc::InvalidConfig, kModule, "compare needs at least one model");
  }
  Comparison c{{grid.begin(), grid.end()}, {}};
  c.columns.reserve(models.size());
  for (const auto& m : models) c.columns.push_back(project(m, grid, guard_fraction));
  return c;
}

std::vector<double> make_grid(double start, double end, double step) {
  if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(end) || end < start) {
    throw GrowthError(Errc::InvalidConfig, kModule, "grid needs start <= end and step > 0");
  }
  std::vector<double> g;
  const double tol = 1e-9 * step;
  for (std::size_t i = 0;; ++i) {
    const double t = start + static_cast<double>(i) * step;
    if (t > end + tol) break;
    g.push_back(t);
  }
  return g;
}

}  // namespace growth
