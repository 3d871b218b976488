#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "stlmask/core.hpp"
#include "stlmask/formula.hpp"

namespace stlmask::testing {

struct GenOptions {
  std::size_t max_depth = 3;
  std::size_t max_length = 40;
  bool until = true;
  bool timed = true;
  /// Smooth intervals on Eventually/Always with this probability.
  double smooth_probability = 0.0;
  /// Step intervals start at 0 only.
  bool zero_start = false;
};

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::size_t length(std::size_t max_length) {
    return std::uniform_int_distribution<std::size_t>(1, max_length)(rng_);
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  std::vector<double> samples(std::size_t n, double lo = -2.0, double hi = 2.0) {
    std::vector<double> out(n);
    for (auto& v : out) v = uniform(lo, hi);
    return out;
  }

  NamedSignals signals(std::size_t n) {
    NamedSignals::Map m;
    m.emplace("x", Signal(samples(n), 1.0));
    m.emplace("y", Signal(samples(n), 1.0));
    return NamedSignals(std::move(m));
  }

  Interval interval(std::size_t length, const GenOptions& opt) {
    const int roll = pick(opt.timed ? 3 : 1);
    if (roll == 0) return std::monostate{};
    if (roll == 2 && opt.smooth_probability > 0.0 && uniform(0.0, 1.0) < opt.smooth_probability) {
      const double a = uniform(0.0, 0.6);
      const double b = a + uniform(0.2, 0.4);
      return SmoothInterval{a, b, uniform(2.0, 8.0), 0.0};
    }
    const std::size_t hi = length + 2;
    std::size_t a = opt.zero_start ? 0 : std::uniform_int_distribution<std::size_t>(0, hi)(rng_);
    std::size_t b = std::uniform_int_distribution<std::size_t>(a, hi)(rng_);
    return StepInterval{a, b};
  }

  Formula formula(std::size_t length, const GenOptions& opt) { return node(opt.max_depth, length, opt); }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  Formula leaf() {
    const char* var = pick(2) == 0 ? "x" : "y";
    const auto cmp = pick(2) == 0 ? Comparison::Greater : Comparison::Less;
    return Formula::predicate(var, cmp, std::round(uniform(-1.5, 1.5) * 100.0) / 100.0);
  }

  Formula node(std::size_t depth, std::size_t length, const GenOptions& opt) {
    if (depth == 0) return pick(8) == 0 ? Formula::truth() : leaf();
    const int choice = pick(opt.until ? 7 : 6);
    switch (choice) {
      case 0: return leaf();
      case 1: return Formula::negation(node(depth - 1, length, opt));
      case 2: return Formula::conjunction(node(depth - 1, length, opt), node(depth - 1, length, opt));
      case 3: return Formula::disjunction(node(depth - 1, length, opt), node(depth - 1, length, opt));
      case 4: return Formula::eventually(node(depth - 1, length, opt), interval(length, opt));
      case 5: return Formula::always(node(depth - 1, length, opt), interval(length, opt));
      default: {
        auto iv = interval(length, opt);
        if (std::holds_alternative<SmoothInterval>(iv)) iv = std::monostate{};
        return Formula::until(node(depth - 1, length, opt), node(depth - 1, length, opt), iv);
      }
    }
  }

  std::mt19937_64 rng_;
};

}  // namespace stlmask::testing
