#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "stlmask/smoothing.hpp"

namespace stlmask {
namespace {

const std::vector<double> kThree{3, 1, 2};

TEST(SmoothMax, Modes) {
  EXPECT_NEAR(smooth_max(std::vector<double>{0, 0}, ReduceMode::logsumexp(1.0)), std::log(2.0), 1e-15);
  EXPECT_NEAR(smooth_min(std::vector<double>{0, 0}, ReduceMode::logsumexp(1.0)), -std::log(2.0), 1e-15);
  EXPECT_EQ(smooth_max(kThree, ReduceMode::hard()), 3.0);
  EXPECT_EQ(smooth_min(kThree, ReduceMode::hard()), 1.0);
  EXPECT_LE(std::abs(smooth_max(kThree, ReduceMode::softmax(20.0)) - 3.0), 2.0 * std::exp(-20.0) * 3.0);
}

TEST(SmoothMax, SingleActiveWeight) {
  const std::vector<double> v{9, 4, 7};
  const std::vector<double> w{0, 1, 0};
  for (auto mode : {ReduceMode::hard(), ReduceMode::softmax(3.0), ReduceMode::logsumexp(3.0)}) {
    EXPECT_NEAR(smooth_min(v, w, mode), 4.0, 1e-15);
    EXPECT_NEAR(smooth_max(v, w, mode), 4.0, 1e-15);
  }
  EXPECT_THROW(smooth_max(v, std::vector<double>{0, 0, 0}, ReduceMode::hard()), EmptyWindow);
  EXPECT_THROW(smooth_max(std::vector<double>{}, ReduceMode::hard()), EmptyWindow);
  EXPECT_THROW(smooth_max(v, std::vector<double>{1, 1}, ReduceMode::hard()), ShapeError);
}

TEST(SmoothMax, NoOverflowAtHighTemperature) {
  const std::vector<double> v{1000, 999, -1000};
  EXPECT_NEAR(smooth_max(v, ReduceMode::logsumexp(1000.0)), 1000.0, 1e-9);
  EXPECT_NEAR(smooth_min(v, ReduceMode::softmax(1000.0)), -1000.0, 1e-9);
}

TEST(SmoothMax, LseCompositionAndSoftmaxFailure) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<double> xs(1 + rep % 9);
    for (auto& x : xs) x = u(rng);
    const double y = u(rng);
    const auto mode = ReduceMode::logsumexp(0.5 + rep % 7);
    auto all = xs;
    all.push_back(y);
    EXPECT_NEAR(smooth_max(std::vector<double>{smooth_max(xs, mode), y}, mode), smooth_max(all, mode), 1e-12);
  }
  const std::vector<double> xs{0.0, 1.0};
  const auto soft = ReduceMode::softmax(1.0);
  const double nested = smooth_max(std::vector<double>{smooth_max(xs, soft), 0.5}, soft);
  EXPECT_GT(std::abs(nested - smooth_max(std::vector<double>{0.0, 1.0, 0.5}, soft)), 1e-3);
}

TEST(SmoothMax, GradientsMatchDifferences) {
  const std::vector<double> v{0.3, -1.2, 0.9, 0.1};
  const std::vector<double> w{0.5, 1.0, 0.2, 0.8};
  for (auto mode : {ReduceMode::softmax(2.5), ReduceMode::logsumexp(2.5)}) {
    for (bool take_max : {true, false}) {
      std::vector<double> dv(4), dw(4);
      auto eval = [&](const std::vector<double>& vv, const std::vector<double>& ww) {
        return take_max ? smooth_max(vv, ww, mode) : smooth_min(vv, ww, mode);
      };
      if (take_max) smooth_max_grad(v, w, mode, dv, dw);
      else smooth_min_grad(v, w, mode, dv, dw);
      const double h = 1e-6;
      for (std::size_t i = 0; i < 4; ++i) {
        auto vp = v, vm = v, wp = w, wm = w;
        vp[i] += h;
        vm[i] -= h;
        wp[i] += h;
        wm[i] -= h;
        EXPECT_NEAR(dv[i], (eval(vp, w) - eval(vm, w)) / (2 * h), 1e-8);
        EXPECT_NEAR(dw[i], (eval(v, wp) - eval(v, wm)) / (2 * h), 1e-8);
      }
    }
  }
}

TEST(SmoothMax, HardSubgradientIsFirstOneHot) {
  const std::vector<double> v{2, 5, 5, 1};
  std::vector<double> d(4);
  smooth_max_grad(v, {}, ReduceMode::hard(), d, {});
  EXPECT_EQ(d, (std::vector<double>{0, 1, 0, 0}));
  smooth_min_grad(std::vector<double>{1, 4, 1}, {}, ReduceMode::hard(), std::span<double>(d.data(), 3), {});
  EXPECT_EQ(d[0], 1.0);
  EXPECT_EQ(d[2], 0.0);
}

TEST(TimeMask, Shape) {
  const SmoothInterval sharp{0.2, 0.8, 1e4, 0.05};
  EXPECT_NEAR(smooth_time_mask(10, sharp, 20), 0.95, 1e-12);
  EXPECT_NEAR(smooth_time_mask(0.3 * 20, SmoothInterval{0.3, 0.9, 50, 0}, 20), 0.5, 1e-12);
  EXPECT_EQ(smooth_time_mask(0, SmoothInterval{0.5, 0.9, 5, 0.01}, 20), 0.0);

  const auto w = smooth_mask_weights(SmoothInterval{0.23, 0.59, 50, 0}, 20);
  for (std::size_t i = 0; i < 20; ++i) {
    EXPECT_GE(w[i], 0.0);
    EXPECT_LE(w[i], 1.0);
    if (i >= 5 && i <= 11) EXPECT_GT(w[i], 0.999);
    else EXPECT_LT(w[i], 1e-4);
  }
  EXPECT_THROW(smooth_mask_weights(SmoothInterval{0.0, 0.01, 100, 0.6}, 20), EmptyWindow);
}

TEST(TimeMask, GradientMatchesDifferences) {
  const SmoothInterval si{0.3, 0.7, 3.0, 0.0};
  const double h = 1e-6;
  for (double i = 0; i < 20; i += 1.0) {
    const auto g = smooth_time_mask_grad(i, si, 20);
    auto at = [&](SmoothInterval s) { return smooth_time_mask(i, s, 20); };
    auto shift = [&](double SmoothInterval::*field, double d) {
      auto s = si;
      s.*field += d;
      return at(s);
    };
    EXPECT_NEAR(g.d_a, (shift(&SmoothInterval::a, h) - shift(&SmoothInterval::a, -h)) / (2 * h), 1e-6);
    EXPECT_NEAR(g.d_b, (shift(&SmoothInterval::b, h) - shift(&SmoothInterval::b, -h)) / (2 * h), 1e-6);
    EXPECT_NEAR(g.d_c, (shift(&SmoothInterval::c, h) - shift(&SmoothInterval::c, -h)) / (2 * h), 1e-6);
  }
}

TEST(TimeMask, Discretize) {
  EXPECT_EQ(discretize(SmoothInterval{0.23, 0.59, 10, 0}, 20), (StepInterval{5, 11}));
  EXPECT_EQ(discretize(SmoothInterval{0.25, 0.5, 10, 0}, 20), (StepInterval{6, 9}));
  EXPECT_THROW(discretize(SmoothInterval{0.26, 0.29, 10, 0}, 20), EmptyWindow);
}

TEST(Anneal, Schedules) {
  EXPECT_EQ(anneal(AnnealSchedule::constant(5.0), 17), 5.0);
  EXPECT_EQ(anneal(AnnealSchedule::linear(0.0, 10.0, 100), 50), 5.0);
  const auto s = AnnealSchedule::sigmoid(1.0, 100.0, 1000);
  EXPECT_EQ(anneal(s, 0), 1.0);
  EXPECT_EQ(anneal(s, 1000), 100.0);
  EXPECT_NEAR(anneal(s, 1000), 100.0, 0.3);
  EXPECT_EQ(anneal(s, 5000), 100.0);
  double prev = 0.0;
  for (std::size_t k = 0; k <= 1000; ++k) {
    const double v = anneal(s, k);
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_THROW(AnnealSchedule::sigmoid(0.0, 1.0, 10).validate(), InvalidArgument);
}

}  // namespace
}  // namespace stlmask
