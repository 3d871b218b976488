#include <gtest/gtest.h>

#include <cmath>

#include "stlmask/autodiff.hpp"
#include "stlmask/grid.hpp"
#include "stlmask/masking.hpp"
#include "stlmask/mining.hpp"
#include "stlmask/optim.hpp"
#include "stlmask/planning.hpp"

namespace stlmask {
namespace {

TEST(Rollout, SingleIntegrator) {
  const auto one = rollout_single_integrator({0, 0}, {{1, 0}}, 0.1);
  ASSERT_EQ(one.size(), 2u);
  EXPECT_EQ(one[1], (Vec2{0.1, 0.0}));
  const auto still = rollout_single_integrator({0.5, -1}, std::vector<Vec2>(5, Vec2{0, 0}), 0.1);
  for (const auto& x : still) EXPECT_EQ(x, (Vec2{0.5, -1}));
  const auto diag = rollout_single_integrator({0, 0}, std::vector<Vec2>(10, Vec2{1, 1}), 0.1);
  EXPECT_NEAR(diag.back()[0], 1.0, 1e-12);
  EXPECT_NEAR(diag.back()[1], 1.0, 1e-12);
  EXPECT_THROW(rollout_single_integrator({0, 0}, {}, 0.0), InvalidArgument);
}

TEST(IntervalParams, SortedSigmoids) {
  const auto m = map_interval(logit(0.7), logit(0.2));
  EXPECT_TRUE(m.swapped);
  EXPECT_NEAR(m.a, 0.2, 1e-15);
  EXPECT_NEAR(m.b, 0.7, 1e-15);
  double pa = 0, pb = 0;
  pull_back(m, 1.0, 0.0, pa, pb);
  EXPECT_EQ(pa, 0.0);
  EXPECT_NEAR(pb, 0.2 * 0.8, 1e-15);
}

TEST(Planning, ObjectiveTerms) {
  PlannerConfig cfg;
  const std::vector<Vec2> zero(cfg.horizon, Vec2{0, 0});
  const auto obj = planning_objective(zero, logit(0.14), logit(0.82), cfg, ReduceMode::hard(), 10.0);
  EXPECT_LT(obj.rho, 0.0);
  const double size_term = std::exp(2.0 * (0.2 - 0.82 + 0.14));
  EXPECT_NEAR(obj.value, cfg.gamma1 * -obj.rho + cfg.gamma2 * size_term, 1e-12);

  const std::vector<Vec2> slow(cfg.horizon, Vec2{1.0, 1.0});
  const auto o2 = planning_objective(slow, 0.0, 1.0, cfg, ReduceMode::logsumexp(5.0), 10.0);
  EXPECT_TRUE(std::isfinite(o2.value));
}

TEST(Planning, GradientMatchesDifferences) {
  PlannerConfig cfg;
  cfg.horizon = 12;
  std::vector<Vec2> u(cfg.horizon);
  for (std::size_t t = 0; t < u.size(); ++t) u[t] = {std::sin(0.7 * t) * 3.0, 1.5 + std::cos(0.3 * t)};
  const double pa = -1.2;
  const double pb = 0.9;
  const auto mode = ReduceMode::logsumexp(4.0);
  const auto obj = planning_objective(u, pa, pb, cfg, mode, 6.0);
  ASSERT_LT(obj.rho, 0.0);

  std::vector<double> point;
  std::vector<double> grad;
  for (std::size_t t = 0; t < u.size(); ++t) {
    point.insert(point.end(), {u[t][0], u[t][1]});
    grad.insert(grad.end(), {obj.d_controls[t][0], obj.d_controls[t][1]});
  }
  point.insert(point.end(), {pa, pb});
  grad.insert(grad.end(), {obj.d_pa, obj.d_pb});
  auto fn = [&](std::span<const double> x) {
    std::vector<Vec2> uu(cfg.horizon);
    for (std::size_t t = 0; t < uu.size(); ++t) uu[t] = {x[2 * t], x[2 * t + 1]};
    return planning_objective(uu, x[2 * cfg.horizon], x[2 * cfg.horizon + 1], cfg, mode, 6.0).value;
  };
  const auto rep = finite_diff_check(fn, point, grad);
  EXPECT_LT(rep.max_rel_error, 1e-6);
  EXPECT_GT(rep.checked, point.size() / 2);
}

TEST(Planning, IgnoringStlOnlyDecaysControls) {
  // Without the STL term and inside the control limit, every step scales the
  // controls by 1 - lr * 2 * gamma4 / T.
  PlannerConfig cfg;
  cfg.gamma1 = 0.0;
  cfg.steps = 1;
  const auto first = plan_trajectory(cfg, 3);
  cfg.steps = 301;
  const auto last = plan_trajectory(cfg, 3);
  const double factor = std::pow(1.0 - cfg.learning_rate * 2.0 * cfg.gamma4 / cfg.horizon, 300);
  for (std::size_t t = 0; t < cfg.horizon; ++t) {
    EXPECT_NEAR(last.controls[t][0], first.controls[t][0] * factor, 1e-12);
    EXPECT_NEAR(last.controls[t][1], first.controls[t][1] * factor, 1e-12);
  }
}

TEST(Planning, Deterministic) {
  PlannerConfig cfg;
  cfg.steps = 50;
  const auto a = plan_trajectory(cfg, 11);
  const auto b = plan_trajectory(cfg, 11);
  EXPECT_EQ(a.history, b.history);
  EXPECT_EQ(a.controls, b.controls);
  const auto c = plan_trajectory(cfg, 12);
  EXPECT_NE(a.history, c.history);
}

TEST(Planning, ConfigValidation) {
  PlannerConfig cfg;
  cfg.u_max = 0.0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg = PlannerConfig{};
  cfg.nominal_size = 1.0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg = PlannerConfig{};
  cfg.horizon = 1;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(Mining, Dataset) {
  DatasetConfig dc;
  const auto data = generate_dataset(dc, 4);
  ASSERT_EQ(data.size(), 64u);
  dc.noise = 0.0;
  dc.jitter = 0;
  const auto clean = generate_dataset(dc, 4);
  for (std::size_t i = 0; i < 20; ++i) EXPECT_EQ(clean[0][i], i >= 5 && i <= 11 ? 1.0 : 0.0) << i;
  EXPECT_EQ(generate_dataset(DatasetConfig{}, 9)[3], generate_dataset(DatasetConfig{}, 9)[3]);
}

TEST(Mining, ObjectiveExamples) {
  DatasetConfig dc;
  dc.noise = 0.0;
  dc.jitter = 0;
  dc.low = -1.0;
  const auto data = generate_dataset(dc, 0);
  const auto lse = ReduceMode::logsumexp(50.0);
  EXPECT_EQ(mining_objective(0.3, 0.5, data, 0.0, 200.0, 1e-3, lse), 0.0);
  EXPECT_GT(mining_objective(0.0, 1.0, data, 0.0, 200.0, 0.0, lse), 0.0);
  EXPECT_THROW(mining_objective(0.2, 0.5, {}, 0.0, 10.0, 0.0, lse), InvalidArgument);
}

TEST(Mining, ObjectiveMatchesFormulaEvaluation) {
  const auto data = generate_dataset(DatasetConfig{}, 2);
  SemanticsConfig sem;
  sem.mode = ReduceMode::logsumexp(7.0);
  for (double a : {0.05, 0.3}) {
    for (double b : {0.5, 0.9}) {
      double want = 0.0;
      for (const auto& s : data) {
        const double rho = masking::robustness(mining_formula(SmoothInterval{a, b, 12.0, 0.0}),
                                               single_channel("s", {s.values().begin(), s.values().end()}), sem);
        want += std::max(-rho, 0.0) / static_cast<double>(data.size());
      }
      want += 0.1 * (a - b);
      EXPECT_NEAR(mining_objective(a, b, data, 0.1, 12.0, 0.0, sem.mode), want, 1e-12);
    }
  }
}

TEST(Mining, GradientMatchesDifferences) {
  const auto data = generate_dataset(DatasetConfig{}, 6);
  const auto mode = ReduceMode::logsumexp(10.0);
  const auto g = mining_objective_grad(0.4, 0.5, data, 0.05, 10.0, 0.0, mode);
  const double h = 1e-6;
  const double da = (mining_objective(0.4 + h, 0.5, data, 0.05, 10.0, 0.0, mode) -
                     mining_objective(0.4 - h, 0.5, data, 0.05, 10.0, 0.0, mode)) / (2 * h);
  const double db = (mining_objective(0.4, 0.5 + h, data, 0.05, 10.0, 0.0, mode) -
                     mining_objective(0.4, 0.5 - h, data, 0.05, 10.0, 0.0, mode)) / (2 * h);
  EXPECT_NEAR(g.d_a, da, 1e-4 * std::max(1.0, std::abs(da)));
  EXPECT_NEAR(g.d_b, db, 1e-4 * std::max(1.0, std::abs(db)));
}

TEST(Mining, RecoversIntervalOnOneSeed) {
  const auto data = generate_dataset(DatasetConfig{}, 42);
  const auto res = mine_interval(data, MiningConfig{});
  EXPECT_NEAR(res.a, 0.23, 0.05);
  EXPECT_NEAR(res.b, 0.59, 0.05);
  EXPECT_EQ(res.loss_history.size(), 5000u);
  for (const auto& p : res.path) EXPECT_LE(p[0], p[1]);
}

TEST(Mining, LandscapeMatchesDiscreteIntervals) {
  // Sharp masks against direct hard evaluation over the samples strictly
  // inside (aL, bL), at grid points at least 0.1 samples from any index.
  const auto data = generate_dataset(DatasetConfig{}, 8);
  const std::size_t n = 20;
  const double gamma = 0.2;
  const auto axis = linspace(0.0, 1.0, 300);
  auto brute = [&](double a, double b) {
    const auto iv = discretize(SmoothInterval{a, b, 1.0, 0.0}, n);
    double loss = 0.0;
    for (const auto& s : data) {
      double rho = s[iv.a];
      for (std::size_t i = iv.a; i <= iv.b; ++i) rho = std::min(rho, s[i]);
      loss += std::max(-rho, 0.0) / static_cast<double>(data.size());
    }
    return loss + gamma * (a - b);
  };
  auto off_grid = [&](double x) {
    const double pos = x * static_cast<double>(n);
    return std::abs(pos - std::round(pos)) > 0.1;
  };
  std::size_t compared = 0;
  double worst = 0.0;
  for (double a : axis) {
    for (double b : axis) {
      if (!(a < b) || !off_grid(a) || !off_grid(b) || std::floor(a * n) + 1 > std::ceil(b * n) - 1) continue;
      const double smooth = mining_objective(a, b, data, gamma, 1e3, 0.0, ReduceMode::logsumexp(1e3));
      worst = std::max(worst, std::abs(smooth - brute(a, b)));
      ++compared;
    }
  }
  EXPECT_GT(compared, 10000u);
  EXPECT_LT(worst, 0.05);
}

TEST(Mining, NoiselessOptimumIsStationary) {
  DatasetConfig dc;
  dc.noise = 0.0;
  dc.jitter = 0;
  const auto data = generate_dataset(dc, 0);
  // Sharp schedule from the start: under soft early schedules the LSE bias
  // ln(n) / tau alone makes every signal look violated.
  MiningConfig cfg;
  cfg.c = AnnealSchedule::constant(100.0);
  cfg.tau = AnnealSchedule::constant(50.0);
  cfg.gamma = 0.0;
  cfg.a_init = 0.23;
  cfg.b_init = 0.59;
  const auto res = mine_interval(data, cfg);
  EXPECT_NEAR(res.a, 0.23, 0.05);
  EXPECT_NEAR(res.b, 0.59, 0.05);
}

TEST(Mining, LargeGammaWidensPastTruth) {
  const auto data = generate_dataset(DatasetConfig{}, 3);
  MiningConfig cfg;
  cfg.gamma = 1000.0;
  const auto res = mine_interval(data, cfg);
  EXPECT_GT(res.b - res.a, 0.59 - 0.23 + 0.1);
}

TEST(Planning, LimitTermVanishesInsideBound) {
  PlannerConfig cfg;
  cfg.gamma1 = 0.0;
  cfg.gamma2 = 0.0;
  cfg.gamma4 = 0.0;
  const auto mode = ReduceMode::logsumexp(10.0);
  const std::vector<Vec2> inside(cfg.horizon, Vec2{1.2, -1.6});
  EXPECT_EQ(planning_objective(inside, 0.0, 1.0, cfg, mode, 5.0).value, 0.0);
  std::vector<Vec2> one_over = inside;
  one_over[7] = {3.0, 4.0};
  EXPECT_NEAR(planning_objective(one_over, 0.0, 1.0, cfg, mode, 5.0).value, cfg.gamma3 * 3.0 / 51.0, 1e-12);
}

TEST(Grid, Combinatorics) {
  const std::vector<double> a{0.2, 0.6};
  const std::vector<double> b{0.4, 0.8};
  const auto g = grid_eval(a, b, [](double x, double y) { return y - x; });
  EXPECT_EQ(g.valid_cells(), 3u);
  EXPECT_FALSE(g.at(1, 0).has_value());
  EXPECT_NEAR(*g.at(0, 1), 0.6, 1e-15);
  const std::vector<double> unsorted{0.5, 0.1};
  EXPECT_THROW(grid_eval(unsorted, b, [](double, double) { return 0.0; }), InvalidArgument);
  EXPECT_EQ(linspace(0, 1, 5), (std::vector<double>{0, 0.25, 0.5, 0.75, 1}));
}

}  // namespace
}  // namespace stlmask
