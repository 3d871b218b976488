#include <gtest/gtest.h>

#include <cmath>

#include "gen.hpp"
#include "stlmask/masking.hpp"
#include "stlmask/reference.hpp"

namespace stlmask {
namespace {

const std::vector<double> kRamp{0, 1, 2, 3, 4, 5, 6, 7};

SemanticsConfig with_padding(PaddingPolicy p, ReduceMode mode = ReduceMode::hard()) {
  SemanticsConfig cfg;
  cfg.padding = p;
  cfg.mode = mode;
  return cfg;
}

TEST(Masks, SubsignalMaskIsLowerTriangular) {
  const auto m = masking::build_subsignal_mask(3, 3);
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(m.at(r, c), r >= c) << r << "," << c;
  }
  const auto tall = masking::build_subsignal_mask(8, 11);
  EXPECT_EQ(tall.kept_in_column(0), 11u);
  EXPECT_EQ(masking::build_subsignal_mask(1, 1).kept_in_column(0), 1u);
  EXPECT_THROW(masking::build_subsignal_mask(3, 2), ShapeError);
}

TEST(Masks, TimeMaskWindow) {
  const auto m = masking::build_time_mask(8, {1, 3});
  EXPECT_EQ(m.rows, 11u);
  for (std::size_t r = 0; r < m.rows; ++r) EXPECT_EQ(m.at(r, 0), r >= 1 && r <= 3);
  const auto full = masking::build_time_mask(4, {0, 3});
  EXPECT_EQ(full.kept_in_column(0), 4u);
  const auto id = masking::build_time_mask(5, {0, 0});
  for (std::size_t t = 0; t < 5; ++t) {
    EXPECT_EQ(id.kept_in_column(t), 1u);
    EXPECT_TRUE(id.at(t, t));
  }
}

TEST(Masks, CombinedMaskKeepsInterval) {
  const auto m = masking::combine_masks(masking::build_subsignal_mask(8, 11), masking::build_time_mask(8, {1, 3}));
  for (std::size_t t = 0; t < 8; ++t) {
    EXPECT_EQ(m.kept_in_column(t), 3u);
    for (std::size_t r = 0; r < m.rows; ++r) EXPECT_EQ(m.at(r, t), r >= t + 1 && r <= t + 3);
  }
  EXPECT_THROW(masking::combine_masks(masking::build_subsignal_mask(8, 8), masking::build_time_mask(8, {1, 3})),
               ShapeError);
}

TEST(Masks, UnrollReplicatesPaddedColumn) {
  const auto u = masking::unroll(kRamp, 3, PaddingPolicy::constant(-1.0));
  ASSERT_EQ(u.rows, 11u);
  for (std::size_t c = 0; c < 8; ++c) {
    for (std::size_t r = 0; r < 11; ++r) EXPECT_EQ(u.at(r, c), r < 8 ? kRamp[r] : -1.0);
  }
  const auto u3 = masking::unroll3d(kRamp, 2, 3, PaddingPolicy::last_value());
  EXPECT_EQ(u3.at(9, 4, 2), 7.0);
}

TEST(Masks, UntilSlices) {
  const auto m = masking::build_until_masks(6, {1, 2});
  ASSERT_EQ(m.left.depth, 2u);
  // slice 1 is i = 2: left keeps t..t+2, right keeps only t+2
  for (std::size_t r = 0; r < m.left.rows; ++r) {
    EXPECT_EQ(m.left.at(r, 1, 1), r >= 1 && r <= 3);
    EXPECT_EQ(m.right.at(r, 1, 1), r == 3);
  }
}

TEST(Eventually, RampWithLastValuePadding) {
  const auto tr = masking::eventually_trace(kRamp, StepInterval{1, 3}, with_padding(PaddingPolicy::last_value()));
  EXPECT_EQ(tr, (std::vector<double>{3, 4, 5, 6, 7, 7, 7, 7}));
}

TEST(Eventually, RampWithConstantPadding) {
  // Column 5 keeps rows 6..8, two of which are real samples.
  const auto tr = masking::eventually_trace(kRamp, StepInterval{1, 3}, with_padding(PaddingPolicy::constant(-1e5)));
  EXPECT_EQ(tr, (std::vector<double>{3, 4, 5, 6, 7, 7, 7, -1e5}));
}

TEST(Eventually, UntimedSuffixMax) {
  const std::vector<double> s{2, 9, 4};
  EXPECT_EQ(masking::eventually_trace(s, {}, {}), (std::vector<double>{9, 9, 4}));
}

TEST(Eventually, WindowEntirelyInPadding) {
  const auto tr = masking::eventually_trace(kRamp, StepInterval{9, 10}, with_padding(PaddingPolicy::constant(-3.0)));
  for (double v : tr) EXPECT_EQ(v, -3.0);
}

TEST(Always, RampAndUntimed) {
  EXPECT_EQ(masking::always_trace(kRamp, StepInterval{1, 3}, with_padding(PaddingPolicy::last_value())),
            (std::vector<double>{1, 2, 3, 4, 5, 6, 7, 7}));
  const std::vector<double> s{2, 9, 4};
  EXPECT_EQ(masking::always_trace(s, {}, {}), (std::vector<double>{2, 4, 4}));
  const std::vector<double> one{-0.5};
  EXPECT_EQ(masking::always_trace(one, {}, {}), one);
}

TEST(Until, UntimedExample) {
  const std::vector<double> l{1, 1, -1};
  const std::vector<double> r{-1, 1, 1};
  const auto tr = masking::until_trace(l, r, {}, {});
  EXPECT_EQ(tr, (std::vector<double>{1, 1, -1}));
}

TEST(Until, TopLeftIsEventually) {
  testing::Generator gen(7);
  for (int rep = 0; rep < 20; ++rep) {
    const auto right = gen.samples(gen.length(15));
    const std::vector<double> top(right.size(), 1e5);
    const auto cfg = with_padding(PaddingPolicy::constant(1e5));
    EXPECT_EQ(masking::until_trace(top, right, {}, cfg), masking::eventually_trace(right, {}, cfg));
  }
}

TEST(Until, ZeroWindowIsPointwiseMin) {
  const std::vector<double> s{0.5, -2, 3};
  EXPECT_EQ(masking::until_trace(s, s, StepInterval{0, 0}, {}), s);
  EXPECT_THROW(masking::until_trace(s, std::vector<double>{1, 2}, {}, {}), ShapeError);
}

TEST(RobustnessTrace, FormulaExamples) {
  const auto s = single_channel("s", kRamp);
  const auto cfg = with_padding(PaddingPolicy::last_value());
  EXPECT_EQ(masking::robustness_trace(parse("F[1,3] (s > 0)"), s, cfg), (std::vector<double>{3, 4, 5, 6, 7, 7, 7, 7}));
  EXPECT_EQ(masking::robustness(parse("F[1,3] (s > 0)"), s, cfg), 3.0);
  EXPECT_EQ(masking::robustness_trace(parse("~(s > 1)"), single_channel("s", {0, 2}), cfg),
            (std::vector<double>{1, -1}));
  EXPECT_EQ(masking::robustness_trace(parse("G (s > 0) & F (s > 5)"), single_channel("s", {1, 6, 2}), cfg),
            (std::vector<double>{1, 1, -3}));
  EXPECT_EQ(masking::robustness(parse("TRUE"), s, cfg), 1e5);
  EXPECT_THROW(masking::robustness(parse("F (q > 0)"), s, cfg), InvalidArgument);
}

TEST(RobustnessTrace, SentinelFillMatchesIndexSetInHardMode) {
  testing::Generator gen(11);
  testing::GenOptions opt;
  for (int rep = 0; rep < 200; ++rep) {
    const auto n = gen.length(12);
    const auto f = gen.formula(n, opt);
    const auto sig = gen.signals(n);
    SemanticsConfig cfg;
    const auto plain = masking::robustness_trace(f, sig, cfg);
    cfg.sentinel_fill = true;
    cfg.sentinel = 1e9;
    EXPECT_EQ(masking::robustness_trace(f, sig, cfg), plain) << format(f);
  }
}

TEST(RobustnessTrace, DenseMatchesStreaming) {
  testing::Generator gen(5);
  for (int rep = 0; rep < 300; ++rep) {
    const auto n = gen.length(14);
    const auto l = gen.samples(n);
    const auto r = gen.samples(n);
    testing::GenOptions opt;
    const auto iv = gen.interval(n, opt);
    for (auto mode : {ReduceMode::hard(), ReduceMode::logsumexp(3.0), ReduceMode::softmax(2.0)}) {
      for (auto pad : {PaddingPolicy::last_value(), PaddingPolicy::constant(0.25)}) {
        const auto cfg = with_padding(pad, mode);
        auto close = [](const std::vector<double>& a, const std::vector<double>& b) {
          for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
        };
        close(masking::eventually_trace(l, iv, cfg), masking::dense::eventually_trace(l, iv, cfg));
        close(masking::always_trace(l, iv, cfg), masking::dense::always_trace(l, iv, cfg));
        close(masking::until_trace(l, r, iv, cfg), masking::dense::until_trace(l, r, iv, cfg));
      }
    }
  }
}

TEST(RobustnessTrace, MatchesReferenceHardAndLse) {
  testing::Generator gen(2024);
  testing::GenOptions opt;
  opt.max_length = 20;
  for (int rep = 0; rep < 300; ++rep) {
    const auto n = gen.length(opt.max_length);
    const auto f = gen.formula(n, opt);
    const auto sig = gen.signals(n);
    for (auto mode : {ReduceMode::hard(), ReduceMode::logsumexp(4.0)}) {
      SemanticsConfig cfg;
      cfg.mode = mode;
      const auto got = masking::robustness_trace(f, sig, cfg);
      const auto want = reference::trace_ref(f, sig, cfg);
      ASSERT_EQ(got.size(), want.size());
      for (std::size_t t = 0; t < got.size(); ++t) {
        EXPECT_NEAR(got[t], want[t], 1e-9 * std::max(1.0, std::abs(want[t]))) << format(f) << " t=" << t;
      }
    }
  }
}

TEST(RobustnessTrace, SmoothBoundsAndDuality) {
  testing::Generator gen(99);
  for (int rep = 0; rep < 200; ++rep) {
    const auto n = gen.length(30);
    const auto s = gen.samples(n);
    const double hard = masking::eventually_trace(s, {}, {})[0];
    for (double tau : {1.0, 10.0, 100.0}) {
      SemanticsConfig cfg;
      cfg.mode = ReduceMode::logsumexp(tau);
      const double lse = masking::eventually_trace(s, {}, cfg)[0];
      EXPECT_GE(lse, hard - 1e-12);
      EXPECT_LE(lse, hard + std::log(static_cast<double>(n)) / tau + 1e-12);
      cfg.mode = ReduceMode::softmax(tau);
      const double soft = masking::eventually_trace(s, {}, cfg)[0];
      EXPECT_LE(soft, hard + 1e-12);
      EXPECT_GE(soft, masking::always_trace(s, {}, {})[0] - 1e-12);
    }
    const auto sig = single_channel("s", s);
    const auto g = masking::robustness_trace(parse("G[0,2] (s > 0.1)"), sig, {});
    const auto nf = masking::robustness_trace(parse("~F[0,2] ~(s > 0.1)"), sig, {});
    EXPECT_EQ(g, nf);
  }
}

TEST(RobustnessTrace, SmoothIntervalWeightsWindow) {
  // With a sharp mask over the first half, G picks the smallest value there.
  const auto s = single_channel("s", {3, 2, 5, 4, -9, -9, -9, -9});
  SemanticsConfig cfg;
  const auto f = Formula::always(Formula::predicate("s", Comparison::Greater, 0.0), SmoothInterval{0.0, 0.45, 200.0, 1e-3});
  EXPECT_DOUBLE_EQ(masking::robustness(f, s, cfg), 2.0);
}

}  // namespace
}  // namespace stlmask
