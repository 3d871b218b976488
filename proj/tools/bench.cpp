#include "bench.hpp"

#include <algorithm>
#include <chrono>

#include "stlmask/autodiff.hpp"
#include "stlmask/bench_suite.hpp"
#include "stlmask/masking.hpp"
#include "stlmask/recurrent.hpp"

namespace stlmask::cli {
namespace {

using Clock = std::chrono::steady_clock;

// Median and interquartile range in milliseconds.
std::pair<double, double> summarize(std::vector<double> ms) {
  std::sort(ms.begin(), ms.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(ms.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, ms.size() - 1);
    return ms[lo] + (ms[hi] - ms[lo]) * (pos - static_cast<double>(lo));
  };
  return {quantile(0.5), quantile(0.75) - quantile(0.25)};
}

template <typename Fn>
BenchTiming time_it(const BenchOptions& opt, Fn&& fn) {
  volatile double sink = 0.0;
  for (std::size_t i = 0; i < opt.warmup; ++i) sink = sink + fn();
  std::vector<double> ms;
  for (std::size_t i = 0; i < opt.reps; ++i) {
    const auto t0 = Clock::now();
    sink = sink + fn();
    ms.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
  }
  BenchTiming t;
  std::tie(t.median_ms, t.iqr_ms) = summarize(std::move(ms));
  t.reps = opt.reps;
  return t;
}

}  // namespace

void BenchOptions::validate() const {
  if (reps < 10) throw InvalidArgument("bench needs at least 10 repetitions");
  if (batch == 0) throw InvalidArgument("batch must be positive");
  if (sizes.empty()) throw InvalidArgument("no signal lengths given");
  for (auto n : sizes) {
    if (n == 0) throw InvalidArgument("signal lengths must be positive");
  }
}

double BenchReport::relative(const std::string& formula, std::size_t length, const std::string& kind) const {
  double m = 0.0;
  double r = 0.0;
  for (const auto& t : timings) {
    if (t.formula != formula || t.length != length || t.kind != kind) continue;
    (t.engine == "masking" ? m : r) = t.median_ms;
  }
  if (m <= 0.0 || r <= 0.0) throw InvalidArgument("no timings for " + formula);
  return m / r - 1.0;
}

BenchReport run_bench(const BenchOptions& opt) {
  opt.validate();
  BenchReport report;
  report.options = opt;
  const auto formulas = bench_formulas();
  SemanticsConfig value_cfg;
  value_cfg.mode = opt.mode;
  SemanticsConfig grad_cfg;
  grad_cfg.mode = ReduceMode::logsumexp(opt.grad_temperature);

  for (const auto length : opt.sizes) {
    const auto batch = bench_batch(length, opt.batch, opt.seed);
    for (const auto& bf : formulas) {
      auto record = [&](const char* engine, const char* kind, auto&& fn) {
        auto t = time_it(opt, fn);
        t.formula = bf.name;
        t.engine = engine;
        t.kind = kind;
        t.length = length;
        report.timings.push_back(std::move(t));
      };
      record("masking", "value", [&] {
        double s = 0.0;
        for (const auto& x : batch) s += masking::robustness(bf.formula, x, value_cfg);
        return s;
      });
      record("recurrent", "value", [&] {
        double s = 0.0;
        for (const auto& x : batch) s += recurrent::trace_recurrent(bf.formula, x, value_cfg).front();
        return s;
      });
      if (!opt.gradients) continue;
      record("masking", "gradient", [&] {
        double s = 0.0;
        for (const auto& x : batch) s += value_and_grad(bf.formula, x, grad_cfg).d_signal.begin()->second.front();
        return s;
      });
      record("recurrent", "gradient", [&] {
        double s = 0.0;
        for (const auto& x : batch) {
          s += recurrent::value_and_grad(bf.formula, x, grad_cfg).d_signal.begin()->second.front();
        }
        return s;
      });
    }
  }
  return report;
}

}  // namespace stlmask::cli
