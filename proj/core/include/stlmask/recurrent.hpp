#pragma once

#include "stlmask/autodiff.hpp"
#include "stlmask/core.hpp"
#include "stlmask/formula.hpp"

namespace stlmask::recurrent {

/// Robustness trace computed backward in time, one sample per step, with a
/// hidden state per temporal node. Reductions are applied pairwise, each new
/// sample entering as the later operand, so nested SoftMax differs from the
/// masking engine while Hard and LogSumExp agree with it.
/// Throws UnsupportedError on smooth intervals.
RobustnessTrace trace_recurrent(const Formula& f, const NamedSignals& signals, const SemanticsConfig& cfg);

/// Robustness at t = 0 and its signal gradient, by reverse accumulation over
/// every pairwise reduction the recurrence performs. `d_interval` stays empty.
Gradients value_and_grad(const Formula& f, const NamedSignals& signals, const SemanticsConfig& cfg);

}  // namespace stlmask::recurrent
