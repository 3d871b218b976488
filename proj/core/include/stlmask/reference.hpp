#pragma once

#include <cstddef>

#include "stlmask/core.hpp"
#include "stlmask/formula.hpp"

// Direct evaluation of the Boolean and quantitative semantics by recursion
// and explicit loops. Slow; meant as a test oracle.
namespace stlmask::reference {

/// Truth of `f` on the subsignal starting at t. Windows are clipped to the
/// signal end, so an operator window that lies past it is empty.
/// Throws IndexError when t >= L.
bool eval_bool(const Formula& f, const NamedSignals& signals, std::size_t t);

/// Robustness at t. Indices past the end read virtual padded samples of the
/// child per cfg.padding, the same convention as the masking engine.
double robustness_ref(const Formula& f, const NamedSignals& signals, std::size_t t, const SemanticsConfig& cfg);

RobustnessTrace trace_ref(const Formula& f, const NamedSignals& signals, const SemanticsConfig& cfg);

}  // namespace stlmask::reference
