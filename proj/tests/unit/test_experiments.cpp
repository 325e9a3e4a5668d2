#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "mollify/csv.hpp"
#include "mollify/errors.hpp"
#include "mollify/experiments.hpp"
#include "mollify/noise.hpp"

using namespace mollify;

TEST(FitLine, ExactLineAndErrors) {
  const LineFit f = fit_line({1, 2, 3, 4}, {3, 5, 7, 9});
  EXPECT_NEAR(f.slope, 2.0, 1e-15);
  EXPECT_NEAR(f.intercept, 1.0, 1e-14);
  EXPECT_NEAR(f.r2, 1.0, 1e-15);
  const LineFit noisy = fit_line({0, 1, 2, 3}, {0, 1, 1, 3});
  EXPECT_LT(noisy.r2, 1.0);
  EXPECT_GT(noisy.r2, 0.0);
  EXPECT_THROW(fit_line({1}, {1}), DomainError);
  EXPECT_THROW(fit_line({1, 1}, {1, 2}), DomainError);
  EXPECT_THROW(fit_line({1, 2}, {1}), DomainError);
}

TEST(RuleParams, Defaults) {
  EXPECT_EQ(RuleParams::apriori_defaults(1).c, 0.2);
  EXPECT_EQ(RuleParams::apriori_defaults(4).c, 0.02);
  EXPECT_EQ(RuleParams::apriori_defaults(2).s, 2.0);
  const RuleParams m = RuleParams::morozov_defaults();
  EXPECT_EQ(m.rule, Rule::morozov);
  EXPECT_EQ(m.morozov.r, 1.0);
  EXPECT_EQ(m.morozov.beta0, 10.0);
  EXPECT_EQ(m.morozov.q, 0.98);
  EXPECT_EQ(m.param(), 1.0);
  EXPECT_EQ(RuleParams::apriori_defaults(3).param(), 0.2);
}

TEST(FitAxisNames, RoundTrip) {
  for (FitAxis a : {FitAxis::loglog_delta, FitAxis::log_vs_loglog}) {
    EXPECT_EQ(fit_axis_from_string(to_string(a)), a);
  }
  EXPECT_THROW(fit_axis_from_string("linear"), DomainError);
}

TEST(RunOnce, NoiseFreeWithDeltaFloor) {
  RuleParams p = RuleParams::apriori_defaults(1);
  p.delta_floor = 1e-12;
  const RunRecord r = run_once(1, 0.0, p, 1);
  EXPECT_EQ(r.delta, 0.0);
  EXPECT_NEAR(r.beta, 0.2 * 1e-3, 1e-15);
  EXPECT_LT(r.rel_err, 1e-3);
}

TEST(RunOnce, MorozovFixture) {
  const RunRecord r = run_once(1, 1.0, RuleParams::morozov_defaults(), 1);
  ASSERT_TRUE(r.selection.has_value());
  EXPECT_LE(r.selection->residual, r.selection->target);
  EXPECT_GT(r.selection->rejected_residual, r.selection->target);
  EXPECT_EQ(r.param, 1.0);
  EXPECT_EQ(r.seed, 1u);
  // Regression fixture (N = 256, L = 10, seed 1).
  EXPECT_NEAR(r.beta, 0.18313147236278132, 1e-12);
  EXPECT_NEAR(r.rel_err, 0.083210506593010658, 1e-12);
}

TEST(RunOnce, PhantomSanity) {
  const RunRecord r = run_once(4, 0.01, RuleParams::apriori_defaults(4), 3);
  EXPECT_LT(r.rel_err, 1.0);
  EXPECT_GT(r.rel_err, 0.0);
}

TEST(Scenario, ZeroInitialStateRejected) {
  const Grid2D g(32, 4.0);
  EXPECT_THROW(Scenario(custom_problem(RealField(g), 1.0, Conductivity::constant(0.1)),
                        ExperimentConfig{32, 4.0}),
               DomainError);
}

TEST(Scenario, RunOnDataReturnsReconstruction) {
  const Scenario sc(example_problem(2), ExperimentConfig{128, 10.0});
  const NoisyData nd = add_noise(sc.exact_data(), NoiseSpec{2.0, 4});
  RealField u(sc.filter().grid());
  RuleParams fixed;
  fixed.rule = Rule::fixed;
  fixed.beta = 0.1;
  const RunRecord rec = sc.run_on_data(nd.g_delta, nd.delta, 2.0, fixed, 4, &u);
  EXPECT_EQ(rec.beta, 0.1);
  EXPECT_NEAR(rec.rel_err, l2_distance(u, sc.initial()) / l2_norm(sc.initial()), 1e-15);
  fixed.beta = 0.0;
  EXPECT_THROW(sc.run_on_data(nd.g_delta, nd.delta, 2.0, fixed, 4), DomainError);
}

TEST(MonteCarlo, SingleReplication) {
  const RuleParams p = RuleParams::apriori_defaults(1);
  const MCSummary s = run_monte_carlo(1, 5.0, p, 1, 99);
  const RunRecord r = run_once(1, 5.0, p, derive_seed(99, 0));
  EXPECT_EQ(s.n_reps, 1);
  EXPECT_EQ(s.var_rel_err, 0.0);
  EXPECT_EQ(s.mean_rel_err, r.rel_err);
  EXPECT_EQ(s.mean_beta, r.beta);
  EXPECT_THROW(run_monte_carlo(1, 5.0, p, 0, 99), DomainError);
}

TEST(MonteCarlo, DeterministicAcrossWorkerCounts) {
  const Scenario sc(example_problem(3), ExperimentConfig{128, 10.0});
  const RuleParams p = RuleParams::morozov_defaults();
  const MCSummary a = run_monte_carlo(sc, 5.0, p, 12, 7, 1);
  const MCSummary b = run_monte_carlo(sc, 5.0, p, 12, 7, 3);
  const MCSummary c = run_monte_carlo(sc, 5.0, p, 12, 7, 0);
  std::ostringstream sa, sb, sc2;
  write_summaries(sa, {a});
  write_summaries(sb, {b});
  write_summaries(sc2, {c});
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(sa.str(), sc2.str());
}

TEST(MonteCarlo, NoiseOrderingAndConcentration) {
  const Scenario sc(example_problem(1), ExperimentConfig{});
  const RuleParams p = RuleParams::apriori_defaults(1);
  const MCSummary hi = run_monte_carlo(sc, 5.0, p, 40, 11);
  const MCSummary lo = run_monte_carlo(sc, 1.0, p, 200, 11);
  EXPECT_GT(hi.mean_rel_err, lo.mean_rel_err);
  EXPECT_GT(hi.mean_beta, lo.mean_beta);
  EXPECT_LE(lo.var_rel_err, std::pow(0.1 * lo.mean_rel_err, 2));
}

TEST(RateStudy, Validation) {
  const RuleParams p = RuleParams::apriori_defaults(1);
  EXPECT_THROW(run_rate_study(1, p, {10, 5, 2}, 1), DomainError);
  EXPECT_THROW(run_rate_study(1, p, {10, 5, 5, 1}, 1), DomainError);
  EXPECT_THROW(run_rate_study(1, p, {1, 2, 5, 10}, 1), DomainError);
  EXPECT_THROW(run_rate_study(1, p, {100, 5, 2, 1}, 1), DomainError);
  EXPECT_EQ(default_rate_levels(), (std::vector<double>{10, 5, 2, 1, 0.5, 0.2, 0.1}));
}

TEST(RateStudy, ShapesAndAxes) {
  const RateCurve c1 = run_rate_study(1, RuleParams::apriori_defaults(1), default_rate_levels(), 42);
  EXPECT_EQ(c1.fit_axis, FitAxis::loglog_delta);
  EXPECT_EQ(c1.points.size(), 7u);
  EXPECT_EQ(c1.fits.size(), 2u);
  EXPECT_GE(c1.fit(FitAxis::loglog_delta).r2, 0.98);
  for (std::size_t i = 1; i < c1.points.size(); ++i) {
    EXPECT_LT(c1.points[i].delta, c1.points[i - 1].delta);
  }

  const RateCurve c2 = run_rate_study(2, RuleParams::apriori_defaults(2), default_rate_levels(), 42);
  const RateCurve c3 = run_rate_study(3, RuleParams::apriori_defaults(3), default_rate_levels(), 42);
  EXPECT_EQ(c2.fit_axis, FitAxis::log_vs_loglog);
  EXPECT_GE(c2.fit(FitAxis::log_vs_loglog).r2, 0.95);
  EXPECT_LT(c2.fitted_slope(), 0.0);
  EXPECT_LT(c3.fitted_slope(), 0.0);
  EXPECT_GT(std::abs(c2.fitted_slope()), std::abs(c3.fitted_slope()));

  // Fits use the relative noise level on the abscissa.
  std::vector<double> x, y;
  for (const auto& pt : c2.points) {
    x.push_back(std::log(-std::log(pt.perc_noise / 100.0)));
    y.push_back(std::log(pt.rel_err));
  }
  EXPECT_NEAR(fit_line(x, y).slope, c2.fitted_slope(), 1e-14);
}

TEST(RateStudy, Deterministic) {
  const RuleParams p = RuleParams::morozov_defaults();
  const Scenario sc(example_problem(2), ExperimentConfig{128, 10.0});
  std::ostringstream a, b;
  write_rate_points(a, {run_rate_study(sc, p, {10, 5, 2, 1}, 3, 1)});
  write_rate_points(b, {run_rate_study(sc, p, {10, 5, 2, 1}, 3, 2)});
  EXPECT_EQ(a.str(), b.str());
}
