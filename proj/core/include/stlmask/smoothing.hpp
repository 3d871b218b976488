#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stlmask/core.hpp"

namespace stlmask {

/// Weighted max reduction.
///
/// An empty `weights` span means every entry has weight one. Otherwise it must
/// match `values` in length, hold entries in [0, 1], and have at least one
/// positive entry (EmptyWindow if not).
///
///   Hard       max over entries with positive weight
///   LogSumExp  (1/tau) ln sum_i w_i exp(tau x_i)
///   SoftMax    sum_i w_i x_i exp(tau x_i) / sum_j w_j exp(tau x_j)
///
/// The exponentials are evaluated relative to the largest active entry, so
/// large temperatures do not overflow. Entries are visited in ascending index.
double smooth_max(std::span<const double> values, std::span<const double> weights, ReduceMode mode);
double smooth_min(std::span<const double> values, std::span<const double> weights, ReduceMode mode);

inline double smooth_max(std::span<const double> values, ReduceMode mode) {
  return smooth_max(values, {}, mode);
}
inline double smooth_min(std::span<const double> values, ReduceMode mode) {
  return smooth_min(values, {}, mode);
}

/// Same as smooth_max, also writing d(out)/d(values) and, when weights are
/// given, d(out)/d(weights). Hard mode hands the whole subgradient to the first
/// maximizing entry.
double smooth_max_grad(std::span<const double> values, std::span<const double> weights,
                       ReduceMode mode, std::span<double> d_values, std::span<double> d_weights);
double smooth_min_grad(std::span<const double> values, std::span<const double> weights,
                       ReduceMode mode, std::span<double> d_values, std::span<double> d_weights);

/// Two-operand forms used for elementwise And/Or and by the recurrences.
double smooth_max2(double x, double y, ReduceMode mode);
double smooth_min2(double x, double y, ReduceMode mode);

double sigmoid(double x) noexcept;

/// Sigmoid window over relative index `i` of a length-L signal:
/// max(sigmoid(c(i - aL)) - sigmoid(c(i - bL)) - eps, 0).
double smooth_time_mask(double i, const SmoothInterval& si, std::size_t length);

struct MaskGradient {
  double value = 0.0;
  double d_a = 0.0;
  double d_b = 0.0;
  double d_c = 0.0;
};

/// Mask value with its partials in a, b, c. Partials are zero where the clamp is active.
MaskGradient smooth_time_mask_grad(double i, const SmoothInterval& si, std::size_t length);

/// Mask for i = 0..L-1. Throws EmptyWindow when every weight is zero.
std::vector<double> smooth_mask_weights(const SmoothInterval& si, std::size_t length);

/// Integer window of samples strictly inside (aL, bL), the c -> infinity limit
/// of the mask. Throws EmptyWindow if no sample qualifies.
StepInterval discretize(const SmoothInterval& si, std::size_t length);

struct AnnealSchedule {
  enum class Kind { Constant, Linear, Sigmoid };

  Kind kind = Kind::Constant;
  double start = 1.0;
  double end = 1.0;
  std::size_t total_steps = 1;

  static AnnealSchedule constant(double v) { return {Kind::Constant, v, v, 1}; }
  static AnnealSchedule linear(double start, double end, std::size_t steps) {
    return {Kind::Linear, start, end, steps};
  }
  static AnnealSchedule sigmoid(double start, double end, std::size_t steps) {
    return {Kind::Sigmoid, start, end, steps};
  }

  /// Throws InvalidArgument on non-positive endpoints or zero steps.
  void validate() const;
};

/// Scheduled value at `step`; steps past total_steps hold the end value.
///
/// The sigmoid kind follows sigmoid(12 (step/total - 1/2)), rescaled so the
/// first and last steps land exactly on `start` and `end`.
double anneal(const AnnealSchedule& schedule, std::size_t step);

}  // namespace stlmask
