#include <gtest/gtest.h>

#include <cmath>

#include "growth/error.hpp"
#include "growth/forecast.hpp"
#include "test_support.hpp"

namespace growth {
namespace {

using testing::rel_err;

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const GrowthError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no GrowthError thrown";
  return Errc::InvalidModel;
}

const GrowthModel kExpo = normalize(exponential(0.025), 2014, 5.82e13);
const GrowthModel kGdp = normalize(linear_rate_time(0.3895, -1.805e-4), 2014, 5.82e13);
const GrowthModel kHyper = hyperbolic(2.155e-3, 4.376);

TEST(Project, ExponentialToCenturyEnd) {
  const auto grid = make_grid(2014, 2100, 1);
  const auto p = project(kExpo, grid);
  ASSERT_TRUE(p.values.back());
  EXPECT_LT(rel_err(*p.values.back(), 4.996387587157534e14), 1e-12);
  EXPECT_LT(rel_err(*p.values.back(), 5.0e14), 0.05);
  EXPECT_EQ(p.values.front(), 5.82e13);
}

TEST(Project, LinearRateTimeMaximum) {
  const auto grid = make_grid(2014, 2300, 0.25);
  const auto p = project(kGdp, grid);
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ASSERT_EQ(p.flags[i], PointFlag::Valid);
    if (*p.values[i] > *p.values[best]) best = i;
  }
  EXPECT_NEAR(grid[best], 2157.8947368421053, 0.25);
  EXPECT_LT(rel_err(*p.values[best], 3.771241164945211e14), 1e-6);
  ASSERT_TRUE(p.diagnostics.extremum && p.diagnostics.extremum->size);
  EXPECT_LT(rel_err(*p.diagnostics.extremum->size, 3.771241164945211e14), 1e-10);
}

TEST(Project, HyperbolicFlagsFromSingularity) {
  const auto grid = make_grid(2000, 2040, 0.1);
  const auto p = project(kHyper, grid);
  const double ts = 4.376 / 2.155e-3;
  const double cut = ts - kDefaultGuardFraction * (ts - 2000);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] >= cut) {
      EXPECT_EQ(p.flags[i], PointFlag::BeyondSingularity) << grid[i];
    } else {
      EXPECT_EQ(p.flags[i], PointFlag::Valid) << grid[i];
    }
  }
  EXPECT_EQ(p.flags[static_cast<std::size_t>(306)], PointFlag::BeyondSingularity);  // 2030.6
  EXPECT_EQ(p.flags[static_cast<std::size_t>(305)], PointFlag::Valid);              // 2030.5
}

TEST(Project, OtherFlags) {
  const auto over = project(normalize(exponential(1.0), 0, 1), make_grid(0, 800, 100));
  EXPECT_EQ(over.flags.back(), PointFlag::Overflow);
  EXPECT_FALSE(over.values.back());
  const auto dom = project(normalize(hyperbolic_rate_time(-170, 0.1), 2000, 1.0), make_grid(1690, 1710, 5));
  EXPECT_EQ(dom.flags.front(), PointFlag::OutsideDomain);
  EXPECT_EQ(dom.flags.back(), PointFlag::Valid);
}

TEST(Project, NoValuesAtFlaggedPoints) {
  for (const auto& m : {kHyper, normalize(linear_rate_size(4.475e-2, 2.155e-3), 2000, 6.85),
                        normalize(exponential(1.0), 0, 1)}) {
    const auto grid = make_grid(1990, 2100, 0.5);
    const auto p = project(m, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      EXPECT_EQ(p.values[i].has_value(), p.flags[i] == PointFlag::Valid);
    }
  }
}

TEST(Project, MonotoneWhereRequired) {
  const std::vector<GrowthModel> ms = {kExpo, kHyper, linear_rate_size(4.475e-2, 2.155e-3, 1.437e38)};
  for (const auto& m : ms) {
    const auto grid = make_grid(1900, 2040, 0.25);
    const auto p = project(m, grid);
    std::optional<double> prev;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!p.values[i]) continue;
      if (prev) EXPECT_GT(*p.values[i], *prev) << grid[i];
      prev = p.values[i];
    }
  }
}

TEST(Project, Deterministic) {
  const auto grid = make_grid(1990, 2100, 0.5);
  EXPECT_EQ(project(kGdp, grid), project(kGdp, grid));
  EXPECT_EQ(project(kHyper, grid), project(kHyper, grid));
}

TEST(Project, Errors) {
  const auto grid = make_grid(2000, 2010, 1);
  EXPECT_EQ(code_of([&] { project(exponential(0.02), grid); }), Errc::UnnormalizedModel);
  EXPECT_EQ(code_of([&] { project(kExpo, std::vector<double>{}); }), Errc::EmptyGrid);
  EXPECT_EQ(code_of([&] { project(kExpo, std::vector<double>{2000, 2000}); }), Errc::NonIncreasingGrid);
  EXPECT_EQ(code_of([&] { project(kExpo, std::vector<double>{2001, 2000}); }), Errc::NonIncreasingGrid);
  EXPECT_EQ(code_of([&] { project(kExpo, grid, 0.0); }), Errc::InvalidConfig);
  EXPECT_EQ(code_of([&] { project(kExpo, grid, 1.0); }), Errc::InvalidConfig);
}

TEST(Compare, ExponentialOvertakesLinearRate) {
  const auto grid = make_grid(2015, 2100, 1);
  const std::vector<GrowthModel> ms = {kExpo, kGdp};
  const auto c = compare(ms, grid);
  ASSERT_EQ(c.columns.size(), 2u);
  EXPECT_GT(*c.columns[0].values.back(), *c.columns[1].values.back());
}

TEST(Compare, SingleModelMatchesProject) {
  const auto grid = make_grid(2015, 2100, 1);
  const std::vector<GrowthModel> ms = {kGdp};
  const auto c = compare(ms, grid);
  ASSERT_EQ(c.columns.size(), 1u);
  EXPECT_EQ(c.columns[0], project(kGdp, grid));
  EXPECT_EQ(c.grid, grid);
}

TEST(Compare, IdenticalModelsGiveIdenticalColumns) {
  const auto grid = make_grid(2015, 2100, 1);
  const std::vector<GrowthModel> ms = {kHyper, kHyper};
  const auto c = compare(ms, grid);
  EXPECT_EQ(c.columns[0], c.columns[1]);
}

TEST(MakeGrid, InclusiveEnd) {
  const auto g = make_grid(2015, 2016, 0.1);
  ASSERT_EQ(g.size(), 11u);
  EXPECT_NEAR(g.back(), 2016, 1e-9);
  EXPECT_EQ(make_grid(2000, 2000, 1).size(), 1u);
}

TEST(FlagNames, Stable) {
  EXPECT_EQ(flag_name(PointFlag::Valid), "valid");
  EXPECT_EQ(flag_name(PointFlag::BeyondSingularity), "beyond_singularity");
  EXPECT_EQ(flag_name(PointFlag::Overflow), "overflow");
  EXPECT_EQ(flag_name(PointFlag::OutsideDomain), "outside_domain");
}

}  // namespace
}  // namespace growth
