#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stlmask/core.hpp"
#include "stlmask/formula.hpp"

namespace stlmask {

/// Partials of the robustness in one smooth interval's parameters.
struct IntervalGradient {
  double d_a = 0.0;
  double d_b = 0.0;
  double d_c = 0.0;
};

struct Gradients {
  double value = 0.0;
  std::map<std::string, std::vector<double>, std::less<>> d_signal;
  /// One entry per smooth interval, in pre-order.
  std::vector<IntervalGradient> d_interval;
};

/// Robustness at t = 0, as computed by the masking engine, and its gradient by
/// reverse accumulation. `bindings` replaces the formula's smooth intervals in
/// pre-order. Hard reductions pass the whole subgradient to the first extremal
/// entry; clamped mask entries contribute nothing to the interval partials.
/// Throws UnsupportedError in sentinel-fill mode.
Gradients value_and_grad(const Formula& f, const NamedSignals& signals, const SemanticsConfig& cfg,
                         std::optional<std::span<const SmoothInterval>> bindings = std::nullopt);

struct FdReport {
  double max_rel_error = 0.0;
  std::size_t worst_index = 0;
  std::size_t checked = 0;
  /// Coordinates where the one-sided slopes disagree (a kink); not compared.
  std::vector<std::size_t> skipped;
};

struct FdOptions {
  double h = 1e-5;
  /// Coordinates whose forward and backward slopes differ by more than this
  /// (relative to max(1, |slope|)) are treated as kinks and skipped.
  double kink_tolerance = 1e-2;
};

/// Compares `analytic` with central differences of `fn` at `point`. Per
/// coordinate the error is |analytic - numeric| / max(1, |numeric|).
FdReport finite_diff_check(const std::function<double(std::span<const double>)>& fn,
                           std::span<const double> point, std::span<const double> analytic, FdOptions opts = {});

/// finite_diff_check over every signal sample (channels in name order) followed
/// by (a, b, c) of each smooth interval.
FdReport check_robustness_gradient(const Formula& f, const NamedSignals& signals, const SemanticsConfig& cfg,
                                   FdOptions opts = {});

}  // namespace stlmask
