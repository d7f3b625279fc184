#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "growth/error.hpp"
#include "growth/models.hpp"
#include "growth/oracle.hpp"
#include "growth/rates.hpp"
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

const GrowthModel kGdp = linear_rate_time(0.3895, -1.805e-4);
const GrowthModel kHyper = hyperbolic(2.155e-3, 4.376);
const GrowthModel kPseudo = linear_rate_size(4.475e-2, 2.155e-3, 1.437e38);

TEST(Evaluate, Hyperbolic) {
  EXPECT_LT(rel_err(evaluate(kHyper, 2000), 15.151515151515152), 1e-12);
}

TEST(Evaluate, PseudoHyperbolicWithPublishedConstant) {
  EXPECT_LT(rel_err(evaluate(kPseudo, 2000), 6.850387483897463), 1e-12);
}

TEST(Evaluate, ZeroRateExponentialIsConstant) {
  const auto m = exponential(0.0, 7.0);
  for (double t : {-1e4, 0.0, 2000.0, 1e6}) EXPECT_EQ(evaluate(m, t), 7.0);
}

TEST(Evaluate, DomainErrors) {
  EXPECT_EQ(code_of([] { evaluate(kHyper, 2030.7); }), Errc::OutsideDomain);
  EXPECT_EQ(code_of([] { evaluate(kHyper, 4.376 / 2.155e-3); }), Errc::OutsideDomain);
  EXPECT_EQ(code_of([] { evaluate(kPseudo, 2040); }), Errc::OutsideDomain);
  EXPECT_EQ(code_of([] { evaluate(hyperbolic_rate_time(-170, 0.1, 1.0), 1600); }), Errc::OutsideDomain);
  EXPECT_EQ(code_of([] { evaluate(exponential(10.0, 1.0), 1000); }), Errc::Overflow);
  EXPECT_EQ(code_of([] { evaluate(exponential(0.02), 0); }), Errc::UnnormalizedModel);
}

TEST(Construct, InvalidParameters) {
  EXPECT_EQ(code_of([] { linear_rate_size(0.0, 1e-3, 1.0); }), Errc::InvalidModel);
  EXPECT_EQ(code_of([] { hyperbolic_rate_time(1.0, 0.0); }), Errc::InvalidModel);
  EXPECT_EQ(code_of([] { poly_rate_solution({}); }), Errc::InvalidModel);
  EXPECT_EQ(code_of([] { exponential(std::nan("")); }), Errc::InvalidModel);
}

TEST(RateAt, Examples) {
  EXPECT_LT(rel_err(rate_at(kGdp, 2014), 0.025973), 1e-10);
  EXPECT_LT(rel_err(rate_at(kHyper, 1990), 2.155e-3 * evaluate(kHyper, 1990)), 1e-15);
  const auto flat = exp_rate_time(std::log(0.03), 0.0);
  for (double t : {0.0, 1950.0, 2100.0}) EXPECT_LT(rel_err(rate_at(flat, t), 0.03), 1e-15);
  EXPECT_LT(rel_err(rate_at(hyperbolic_rate_time(-170, 0.1), 2000), 1.0 / 30.0), 1e-12);
}

TEST(RateAt, LogWrappedUsesInnerRateTimesF) {
  const auto inner = normalize(linear_rate_time(0.045, -2e-5), 2000, std::log(1000.0));
  const auto m = log_wrap(inner);
  for (double t : {2000.0, 2030.0, 2080.0}) {
    const double F = evaluate(inner, t);
    EXPECT_LT(rel_err(rate_at(m, t), rate_at(inner, t) * F), 1e-14);
  }
}

TEST(Normalize, HyperbolicInversion) {
  const auto m = normalize(hyperbolic(2.155e-3), 2000, 15.15);
  const auto* h = m.get_if<Hyperbolic>();
  ASSERT_TRUE(h && h->C);
  EXPECT_LT(std::abs(*h->C - 4.376), 1e-3);
  EXPECT_LT(rel_err(*h->C, 1.0 / 15.15 + 2.155e-3 * 2000), 1e-15);
}

TEST(Normalize, LogisticAnchorOnCeilingIsUnreachable) {
  EXPECT_EQ(code_of([] { normalize(linear_rate_size(0.03, -3e-5), 1950, 1000); }), Errc::UnreachableAnchor);
  EXPECT_EQ(code_of([] { normalize(linear_rate_size(0.03, -3e-5), 1950, 2000); }), Errc::UnreachableAnchor);
  EXPECT_EQ(code_of([] { normalize(exponential(0.02), 1950, 0.0); }), Errc::NonPositiveAnchor);
  EXPECT_EQ(code_of([] { normalize(exponential(0.02), 1950, -3.0); }), Errc::NonPositiveAnchor);
}

TEST(Normalize, RoundTripsEveryVariant) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> year(1900, 2020), logsize(-5, 30);
  const std::vector<GrowthModel> shapes = {
      exponential(0.025),
      linear_rate_time(0.3895, -1.805e-4),
      poly_rate_solution({0.03, -2e-4, 3e-6}),
      hyperbolic(2.155e-3),
      linear_rate_size(4.475e-2, 2.155e-3),
      hyperbolic_rate_time(-170, 0.1),
      hyperbolic_rate_time(230, -0.1),
      exp_rate_time(std::log(0.02) - 20, 0.01),
      log_wrap(linear_rate_time(0.045, -2e-5)),
  };
  for (const auto& m : shapes) {
    for (int k = 0; k < 20; ++k) {
      const double t0 = year(gen);
      const double S0 = std::exp(logsize(gen));
      GrowthModel n = m;
      try {
        n = normalize(m, t0, S0);
      } catch (const GrowthError& e) {
        // HyperbolicRateTime shapes only exist on one side of -a/b.
        ASSERT_EQ(e.code(), Errc::OutsideDomain) << e.what();
        continue;
      }
      ASSERT_TRUE(n.is_normalized());
      EXPECT_LT(rel_err(evaluate(n, t0), S0), 1e-12) << kind_name(m.kind()) << " t0=" << t0;
    }
  }
  // Logistic below its ceiling; log-wrapped logistic with F0 below a/|b|.
  const auto l = normalize(linear_rate_size(0.03, -3e-5), 1950, 100);
  EXPECT_LT(rel_err(evaluate(l, 1950), 100), 1e-12);
  const auto lw = normalize(log_wrap(linear_rate_size(0.05, -0.01)), 2000, std::exp(2.0));
  EXPECT_LT(rel_err(evaluate(lw, 2000), std::exp(2.0)), 1e-12);
}

TEST(Diagnostics, Examples) {
  const auto h = diagnostics(kHyper);
  ASSERT_TRUE(h.singularity_time);
  EXPECT_LT(std::abs(*h.singularity_time - 2030.6264501160093), 1e-9);
  EXPECT_FALSE(h.size_limit);

  const auto p = diagnostics(kPseudo);
  ASSERT_TRUE(p.singularity_time && p.reciprocal_limit);
  EXPECT_LT(std::abs(*p.singularity_time - 2031.1528907717492), 1e-9);
  EXPECT_LT(rel_err(*p.reciprocal_limit, -0.04815642458100559), 1e-14);
  EXPECT_FALSE(p.size_limit);

  const auto g = diagnostics(kGdp);
  ASSERT_TRUE(g.extremum);
  EXPECT_LT(std::abs(g.extremum->time - 2157.8947368421053), 1e-9);
  EXPECT_FALSE(g.extremum->size);

  const auto gn = diagnostics(normalize(kGdp, 2014, 5.82e13));
  ASSERT_TRUE(gn.extremum && gn.extremum->size);
  EXPECT_LT(rel_err(*gn.extremum->size, 3.771241164945211e14), 1e-10);

  const auto l = diagnostics(linear_rate_size(0.03, -3e-5, 1.0));
  ASSERT_TRUE(l.size_limit);
  EXPECT_LT(rel_err(*l.size_limit, 1000.0), 1e-15);
  EXPECT_FALSE(l.singularity_time);

  EXPECT_EQ(diagnostics(exponential(0.02, 1.0)), ModelDiagnostics{});
  EXPECT_EQ(diagnostics(linear_rate_time(0.02, 1e-4, 1.0)), ModelDiagnostics{});
}

TEST(Diagnostics, LogWrappedPropagatesInnerFeatures) {
  const auto inner = normalize(linear_rate_size(0.05, -0.01), 2000, 2.0);
  const auto d = diagnostics(log_wrap(inner));
  ASSERT_TRUE(d.size_limit);
  EXPECT_LT(rel_err(*d.size_limit, std::exp(5.0)), 1e-14);
}

TEST(PolyRate, DegreeZeroMatchesExponential) {
  const auto p = poly_rate_solution({0.025}, 3.0);
  const auto e = exponential(0.025, 3.0);
  for (double t = -50; t <= 150; t += 0.5) EXPECT_LT(rel_err(evaluate(p, t), evaluate(e, t)), 1e-14);
}

TEST(PolyRate, DegreeOneMatchesLinearRateTime) {
  const auto p = poly_rate_solution({0.03, -2e-4}, 5.0);
  const auto l = linear_rate_time(0.03, -2e-4, 5.0);
  for (double t = -50; t <= 150; t += 0.5) {
    EXPECT_LT(rel_err(evaluate(p, t), evaluate(l, t)), 1e-14);
    EXPECT_LT(rel_err(rate_at(p, t), rate_at(l, t)), 1e-14);
  }
}

TEST(PolyRate, CubicExponent) {
  const auto m = poly_rate_solution({0, 0, 3}, 2.0);
  EXPECT_LT(rel_err(evaluate(m, 1) / evaluate(m, 0), std::exp(1.0)), 1e-15);
  const double grid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  const auto ode = integrate_rate_ode(m, 0.0, 2.0, grid, 200);
  EXPECT_LT(rel_err(ode.back() / ode.front(), std::exp(1.0)), 1e-9);
}

TEST(LogWrap, Examples) {
  const double a = 0.045, b = -2e-5, C = 1.5;
  const auto m = log_wrap(linear_rate_time(a, b, C));
  for (double t : {0.0, 10.0, 33.3}) {
    EXPECT_LT(rel_err(evaluate(m, t), std::exp(C * std::exp(a * t + 0.5 * b * t * t))), 1e-14);
  }
  const auto e = log_wrap(exponential(0.0, 1.0));
  for (double t : {-100.0, 0.0, 2000.0}) EXPECT_EQ(evaluate(e, t), std::exp(1.0));
}

TEST(LogWrap, LogisticInnerRecoveredFromData) {
  const double a = 0.05, b = -0.01;
  const auto m = normalize(log_wrap(linear_rate_size(a, b)), 2000, std::exp(2.0));
  const auto t = testing::years(2000, 2150);
  const auto ts = make_series(t, testing::sample(t, [&](double x) { return evaluate(m, x); }));
  const auto rs = transform_rates(ts, TransformKind::Log);
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_LT(rel_err(rs.rates[i], a + b * rs.sizes[i]), 0.01) << "t=" << t[i];
  }
  EXPECT_LT(rel_err(rs.sizes[0], 2.0), 1e-12);
}

TEST(ModelProperty, HyperbolicReciprocalIsLinear) {
  for (double t = 1800; t < 2030; t += 0.37) {
    EXPECT_LT(rel_err(1.0 / evaluate(kHyper, t), 4.376 - 2.155e-3 * t), 1e-14) << t;
  }
}

TEST(ModelProperty, PseudoHyperbolicReciprocalShape) {
  const double a = 4.475e-2, b = 2.155e-3;
  double prev = std::numeric_limits<double>::infinity();
  for (double t = 1800; t < 2031; t += 0.5) {
    const double recip = 1.0 / evaluate(kPseudo, t);
    // C e^{-at} computed through logs: 1.437e38 * e^{-90} is far below 1.
    const double expected = std::exp(std::log(1.437e38) - a * t) - b / a;
    EXPECT_LT(rel_err(recip, expected), 1e-12) << t;
    EXPECT_LT(recip, prev);
    prev = recip;
  }
}

TEST(ModelProperty, LogisticApproachesCeilingMonotonically) {
  const auto m = normalize(linear_rate_size(0.03, -3e-5), 1950, 100);
  double prev = 0.0;
  for (double t = 1950; t <= 2600; t += 1.0) {
    const double s = evaluate(m, t);
    EXPECT_GT(s, prev);
    EXPECT_LT(s, 1000.0);
    prev = s;
  }
  EXPECT_LT(rel_err(evaluate(m, 2600), 1000.0), 1e-3);
}

TEST(ModelProperty, ReductionConsistency) {
  for (double b : {1e-4, 1e-6, 1e-8, 1e-10}) {
    const auto m = normalize(linear_rate_size(0.02, b), 2000, 10.0);
    EXPECT_LT(std::abs(rate_at(m, 2010) - 0.02), 20.0 * b * 1.3);
  }
  const auto zero = normalize(linear_rate_size(0.02, 0.0), 2000, 10.0);
  EXPECT_EQ(rate_at(zero, 2050), 0.02);

  const auto near = normalize(hyperbolic_rate_time(40.0, 1e-8), 2000, 1.0);
  const auto expo = normalize(exponential(0.025), 2000, 1.0);
  for (double t = 2000; t <= 2010; t += 0.25) {
    EXPECT_LT(rel_err(evaluate(near, t), evaluate(expo, t)), 1e-4) << t;
  }
}

TEST(ModelProperty, ExtremumGradient) {
  const auto m = normalize(kGdp, 2014, 5.82e13);
  const double tm = 0.3895 / 1.805e-4;
  EXPECT_LT(std::abs(gradient(m, tm)) / evaluate(m, tm), 1e-9);
  for (double t = 1960; t <= 2140; t += 7.0) {
    const double h = 1e-3;
    const double fd = (evaluate(m, t + h) - evaluate(m, t - h)) / (2 * h);
    EXPECT_LT(rel_err(fd, gradient(m, t)), 1e-6) << t;
  }
}

TEST(ModelProperty, OracleEquivalenceForEveryVariant) {
  std::set<ModelKind> seen;
  for (const auto& c : reference_cases()) {
    const auto grid = guarded_grid(c.model, c.t_start, c.t_end, 200);
    ASSERT_GE(grid.size(), 200u);
    const auto rep = compare_with_closed_form(c.model, grid, 100);
    EXPECT_LT(rep.max_rel_error, 1e-6) << c.label;
    seen.insert(c.model.kind());
  }
  EXPECT_EQ(seen.size(), 8u);
}

}  // namespace
}  // namespace growth
