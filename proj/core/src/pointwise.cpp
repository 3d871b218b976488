#include "detail/pointwise.hpp"

#include <algorithm>
#include <string>

#include "stlmask/smoothing.hpp"

namespace stlmask::detail {

void check_evaluable(const Formula& f, const NamedSignals& signals, const SemanticsConfig& cfg) {
  cfg.validate();
  if (signals.empty()) throw EmptySignal("no signal channels given");
  const auto missing = validate_against(f, signals);
  if (!missing.empty()) {
    std::string names;
    for (const auto& m : missing) names += (names.empty() ? "" : ", ") + m;
    throw InvalidArgument("no channel for variable(s): " + names);
  }
}

double predicate_sign(Comparison cmp) {
  return cmp == Comparison::Greater || cmp == Comparison::GreaterEqual ? 1.0 : -1.0;
}

RobustnessTrace predicate_trace(const Formula& pred, const NamedSignals& signals) {
  const auto xs = signals.at(pred.variable()).values();
  const double sign = predicate_sign(pred.comparison());
  const double c = pred.threshold();
  RobustnessTrace out(xs.size());
  for (std::size_t t = 0; t < xs.size(); ++t) out[t] = sign * (xs[t] - c);
  return out;
}

RobustnessTrace negated(RobustnessTrace trace) {
  for (auto& v : trace) v = -v;
  return trace;
}

RobustnessTrace pointwise(std::span<const double> lhs, std::span<const double> rhs, ReduceMode mode, bool take_max) {
  if (lhs.size() != rhs.size()) throw ShapeError("operand traces differ in length");
  RobustnessTrace out(lhs.size());
  for (std::size_t t = 0; t < lhs.size(); ++t) {
    out[t] = take_max ? smooth_max2(lhs[t], rhs[t], mode) : smooth_min2(lhs[t], rhs[t], mode);
  }
  return out;
}

}  // namespace stlmask::detail
