#include "stlmask/reference.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "detail/pointwise.hpp"
#include "stlmask/smoothing.hpp"

namespace stlmask::reference {
namespace {

void check_index(std::size_t t, std::size_t length) {
  if (t >= length) {
    throw IndexError("start index " + std::to_string(t) + " outside signal of length " + std::to_string(length));
  }
}

class BoolEval {
 public:
  explicit BoolEval(const NamedSignals& signals) : signals_(signals), length_(signals.length()) {}

  bool at(const Formula& f, std::size_t t) {
    const auto key = std::make_pair(f.id(), t);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const bool v = compute(f, t);
    memo_.emplace(key, v);
    return v;
  }

 private:
  // Offsets i with t + i inside the signal.
  std::vector<std::size_t> offsets(const Interval& iv, std::size_t t) const {
    std::vector<std::size_t> out;
    if (const auto* step = std::get_if<StepInterval>(&iv)) {
      for (std::size_t i = step->a; i <= step->b && t + i < length_; ++i) out.push_back(i);
    } else if (const auto* si = std::get_if<SmoothInterval>(&iv)) {
      for (std::size_t i = 0; t + i < length_; ++i) {
        if (smooth_time_mask(static_cast<double>(i), *si, length_) > 0.0) out.push_back(i);
      }
    } else {
      for (std::size_t i = 0; t + i < length_; ++i) out.push_back(i);
    }
    return out;
  }

  bool compute(const Formula& f, std::size_t t) {
    switch (f.op()) {
      case Op::True: return true;
      case Op::Predicate: {
        const double x = signals_.at(f.variable())[t];
        return detail::predicate_sign(f.comparison()) * (x - f.threshold()) > 0.0;
      }
      case Op::Not: return !at(f.child(), t);
      case Op::And: return at(f.left(), t) && at(f.right(), t);
      case Op::Or: return at(f.left(), t) || at(f.right(), t);
      case Op::Eventually:
        for (std::size_t i : offsets(f.interval(), t)) {
          if (at(f.child(), t + i)) return true;
        }
        return false;
      case Op::Always:
        for (std::size_t i : offsets(f.interval(), t)) {
          if (!at(f.child(), t + i)) return false;
        }
        return true;
      case Op::Until:
        for (std::size_t i : offsets(f.interval(), t)) {
          if (!at(f.right(), t + i)) continue;
          bool held = true;
          for (std::size_t tau = 0; tau <= i && held; ++tau) held = at(f.left(), t + tau);
          if (held) return true;
        }
        return false;
    }
    throw UnsupportedError("unknown operator");
  }

  const NamedSignals& signals_;
  std::size_t length_;
  std::map<std::pair<const void*, std::size_t>, bool> memo_;
};

class RobustEval {
 public:
  RobustEval(const NamedSignals& signals, const SemanticsConfig& cfg)
      : signals_(signals), cfg_(cfg), length_(signals.length()) {}

  double at(const Formula& f, std::size_t t) {
    const auto key = std::make_pair(f.id(), t);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const double v = compute(f, t);
    memo_.emplace(key, v);
    return v;
  }

 private:
  // Child robustness at s, reading the padded sample once s passes the end.
  double padded_at(const Formula& f, std::size_t s) {
    if (s < length_) return at(f, s);
    if (cfg_.padding.kind == PaddingPolicy::Kind::Constant) return cfg_.padding.value;
    return at(f, length_ - 1);
  }

  double temporal(const Formula& f, std::size_t t, bool take_max) {
    std::vector<double> window;
    std::vector<double> weights;
    const auto& iv = f.interval();
    if (const auto* step = std::get_if<StepInterval>(&iv)) {
      for (std::size_t i = step->a; i <= step->b; ++i) window.push_back(padded_at(f.child(), t + i));
    } else if (const auto* si = std::get_if<SmoothInterval>(&iv)) {
      weights = smooth_mask_weights(*si, length_);
      for (std::size_t i = 0; i < length_; ++i) window.push_back(padded_at(f.child(), t + i));
    } else {
      for (std::size_t s = t; s < length_; ++s) window.push_back(at(f.child(), s));
    }
    return take_max ? smooth_max(window, weights, cfg_.mode) : smooth_min(window, weights, cfg_.mode);
  }

  double until(const Formula& f, std::size_t t) {
    const auto& iv = f.interval();
    if (std::holds_alternative<SmoothInterval>(iv)) throw UnsupportedError("smooth intervals on Until");
    std::size_t first = 0;
    std::size_t last = length_ - 1 - t;
    if (const auto* step = std::get_if<StepInterval>(&iv)) {
      first = step->a;
      last = step->b;
    }
    std::vector<double> outer;
    std::vector<double> prefix;
    for (std::size_t i = first; i <= last; ++i) {
      prefix.clear();
      for (std::size_t tau = 0; tau <= i; ++tau) prefix.push_back(padded_at(f.left(), t + tau));
      const double lhs = smooth_min(prefix, cfg_.mode);
      outer.push_back(smooth_min2(lhs, padded_at(f.right(), t + i), cfg_.mode));
    }
    return smooth_max(outer, cfg_.mode);
  }

  double compute(const Formula& f, std::size_t t) {
    switch (f.op()) {
      case Op::True: return cfg_.rho_max;
      case Op::Predicate: {
        const double x = signals_.at(f.variable())[t];
        return detail::predicate_sign(f.comparison()) * (x - f.threshold());
      }
      case Op::Not: return -at(f.child(), t);
      case Op::And: return smooth_min2(at(f.left(), t), at(f.right(), t), cfg_.mode);
      case Op::Or: return smooth_max2(at(f.left(), t), at(f.right(), t), cfg_.mode);
      case Op::Eventually: return temporal(f, t, true);
      case Op::Always: return temporal(f, t, false);
      case Op::Until: return until(f, t);
    }
    throw UnsupportedError("unknown operator");
  }

  const NamedSignals& signals_;
  const SemanticsConfig& cfg_;
  std::size_t length_;
  std::map<std::pair<const void*, std::size_t>, double> memo_;
};

}  // namespace

bool eval_bool(const Formula& f, const NamedSignals& signals, std::size_t t) {
  detail::check_evaluable(f, signals, SemanticsConfig{});
  check_index(t, signals.length());
  return BoolEval(signals).at(f, t);
}

double robustness_ref(const Formula& f, const NamedSignals& signals, std::size_t t, const SemanticsConfig& cfg) {
  detail::check_evaluable(f, signals, cfg);
  check_index(t, signals.length());
  return RobustEval(signals, cfg).at(f, t);
}

RobustnessTrace trace_ref(const Formula& f, const NamedSignals& signals, const SemanticsConfig& cfg) {
  detail::check_evaluable(f, signals, cfg);
  RobustEval eval(signals, cfg);
  RobustnessTrace out(signals.length());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = eval.at(f, t);
  return out;
}

}  // namespace stlmask::reference
