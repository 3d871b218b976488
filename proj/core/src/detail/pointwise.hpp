#pragma once

#include <span>

#include "stlmask/core.hpp"
#include "stlmask/formula.hpp"

namespace stlmask::detail {

/// Checks config, non-empty signals and that every variable resolves.
void check_evaluable(const Formula& f, const NamedSignals& signals, const SemanticsConfig& cfg);

/// mu(x_t) - c for `>`/`>=`, c - mu(x_t) for `<`/`<=`.
RobustnessTrace predicate_trace(const Formula& pred, const NamedSignals& signals);

double predicate_sign(Comparison cmp);

RobustnessTrace negated(RobustnessTrace trace);

/// Elementwise two-operand max (Or) or min (And).
RobustnessTrace pointwise(std::span<const double> lhs, std::span<const double> rhs, ReduceMode mode, bool take_max);

}  // namespace stlmask::detail
