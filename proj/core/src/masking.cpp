#include "stlmask/masking.hpp"

#include <variant>

#include "detail/pointwise.hpp"
#include "detail/window.hpp"
#include "stlmask/smoothing.hpp"

namespace stlmask::masking {
namespace {

// Each column keeps one contiguous run of padded rows, so the reduction is
// taken over that run directly instead of over a materialized array.
RobustnessTrace temporal(std::span<const double> inner, const Interval& iv, const SemanticsConfig& cfg,
                         bool take_max) {
  cfg.validate();
  if (inner.empty()) throw EmptySignal("empty child trace");
  const bool smooth = std::holds_alternative<SmoothInterval>(iv);
  if (cfg.sentinel_fill && !smooth) {
    return take_max ? dense::eventually_trace(inner, iv, cfg) : dense::always_trace(inner, iv, cfg);
  }
  const std::size_t length = inner.size();
  const auto column = detail::padded(inner, detail::pad_length(length, iv), cfg.padding);
  std::vector<double> weights;
  if (smooth) weights = smooth_mask_weights(std::get<SmoothInterval>(iv), length);

  RobustnessTrace out(length);
  for (std::size_t t = 0; t < length; ++t) {
    const auto rows = detail::column_rows(t, length, iv);
    const std::span<const double> window(column.data() + rows.first, rows.size());
    if (cfg.mode.kind == Smoothing::Hard && !smooth) {
      double best = window[0];
      for (double v : window) best = take_max ? (v > best ? v : best) : (v < best ? v : best);
      out[t] = best;
    } else {
      out[t] = take_max ? smooth_max(window, weights, cfg.mode) : smooth_min(window, weights, cfg.mode);
    }
  }
  return out;
}

}  // namespace

RobustnessTrace eventually_trace(std::span<const double> inner, const Interval& iv, const SemanticsConfig& cfg) {
  return temporal(inner, iv, cfg, true);
}

RobustnessTrace always_trace(std::span<const double> inner, const Interval& iv, const SemanticsConfig& cfg) {
  return temporal(inner, iv, cfg, false);
}

RobustnessTrace until_trace(std::span<const double> left, std::span<const double> right, const Interval& iv,
                            const SemanticsConfig& cfg) {
  cfg.validate();
  if (left.size() != right.size()) throw ShapeError("until operands differ in length");
  if (left.empty()) throw EmptySignal("empty child trace");
  if (std::holds_alternative<SmoothInterval>(iv)) throw UnsupportedError("smooth intervals on Until");
  if (cfg.sentinel_fill) return dense::until_trace(left, right, iv, cfg);

  const std::size_t length = left.size();
  const std::size_t pad = detail::pad_length(length, iv);
  const auto lcol = detail::padded(left, pad, cfg.padding);
  const auto rcol = detail::padded(right, pad, cfg.padding);
  const bool hard = cfg.mode.kind == Smoothing::Hard;

  RobustnessTrace out(length);
  std::vector<double> s2;
  for (std::size_t t = 0; t < length; ++t) {
    const auto steps = detail::until_steps(t, length, iv);
    s2.clear();
    double running = lcol[t];
    for (std::size_t tau = 1; tau < steps.first; ++tau) running = lcol[t + tau] < running ? lcol[t + tau] : running;
    for (std::size_t i = steps.first; i <= steps.last; ++i) {
      double s1;
      if (hard) {
        running = lcol[t + i] < running ? lcol[t + i] : running;
        s1 = running;
      } else {
        s1 = smooth_min(std::span<const double>(lcol.data() + t, i + 1), cfg.mode);
      }
      s2.push_back(smooth_min2(s1, rcol[t + i], cfg.mode));
    }
    out[t] = smooth_max(s2, cfg.mode);
  }
  return out;
}

namespace {

RobustnessTrace trace_of(const Formula& f, const NamedSignals& signals, const SemanticsConfig& cfg) {
  switch (f.op()) {
    case Op::True: return RobustnessTrace(signals.length(), cfg.rho_max);
    case Op::Predicate: return detail::predicate_trace(f, signals);
    case Op::Not: return detail::negated(trace_of(f.child(), signals, cfg));
    case Op::And:
    case Op::Or: {
      const auto l = trace_of(f.left(), signals, cfg);
      const auto r = trace_of(f.right(), signals, cfg);
      return detail::pointwise(l, r, cfg.mode, f.op() == Op::Or);
    }
    case Op::Eventually: return eventually_trace(trace_of(f.child(), signals, cfg), f.interval(), cfg);
    case Op::Always: return always_trace(trace_of(f.child(), signals, cfg), f.interval(), cfg);
    case Op::Until: {
      const auto l = trace_of(f.left(), signals, cfg);
      const auto r = trace_of(f.right(), signals, cfg);
      return until_trace(l, r, f.interval(), cfg);
    }
  }
  throw UnsupportedError("unknown operator");
}

}  // namespace

RobustnessTrace robustness_trace(const Formula& f, const NamedSignals& signals, const SemanticsConfig& cfg) {
  detail::check_evaluable(f, signals, cfg);
  return trace_of(f, signals, cfg);
}

double robustness(const Formula& f, const NamedSignals& signals, const SemanticsConfig& cfg) {
  return robustness_trace(f, signals, cfg).front();
}

}  // namespace stlmask::masking
