#include "stlmask/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace stlmask {
namespace {

bool active(std::span<const double> weights, std::size_t i) { return weights.empty() || weights[i] > 0.0; }

void check_inputs(std::span<const double> values, std::span<const double> weights) {
  if (values.empty()) throw EmptyWindow("reduction over an empty window");
  if (!weights.empty() && weights.size() != values.size()) {
    throw ShapeError("weights and values differ in length");
  }
}

// Largest active entry of sign*values and its first index.
std::pair<double, std::size_t> active_max(std::span<const double> values, std::span<const double> weights,
                                          double sign) {
  double best = -std::numeric_limits<double>::infinity();
  std::size_t arg = values.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double y = sign * values[i];
    if (active(weights, i) && (arg == values.size() || y > best)) {
      best = y;
      arg = i;
    }
  }
  if (arg == values.size()) throw EmptyWindow("all reduction weights are zero");
  return {best, arg};
}

// max of sign*values, returned as sign*max so sign = -1 yields the min.
double reduce(std::span<const double> values, std::span<const double> weights, ReduceMode mode, double sign,
              std::span<double> d_values, std::span<double> d_weights) {
  check_inputs(values, weights);
  const bool want_dv = !d_values.empty();
  const bool want_dw = !d_weights.empty() && !weights.empty();
  const auto [m, arg] = active_max(values, weights, sign);

  if (mode.kind == Smoothing::Hard) {
    if (want_dv) {
      std::fill(d_values.begin(), d_values.end(), 0.0);
      d_values[arg] = 1.0;
    }
    if (want_dw) std::fill(d_weights.begin(), d_weights.end(), 0.0);
    return sign * m;
  }

  const double tau = mode.temperature;
  double z = 0.0;
  double num = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!active(weights, i)) continue;
    const double w = weights.empty() ? 1.0 : weights[i];
    const double y = sign * values[i];
    const double e = w * std::exp(tau * (y - m));
    z += e;
    num += e * y;
  }

  // Partials are taken for y = sign*x and out = sign*max(y): the value
  // partials pick up sign twice, the weight partials once.
  if (mode.kind == Smoothing::LogSumExp) {
    const double out = m + std::log(z) / tau;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double raw = active(weights, i) ? std::exp(tau * (sign * values[i] - m)) : 0.0;
      if (want_dv) d_values[i] = (weights.empty() ? 1.0 : weights[i]) * raw / z;
      if (want_dw) d_weights[i] = sign * raw / (tau * z);
    }
    return sign * out;
  }

  const double out = num / z;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double y = sign * values[i];
    const double raw = active(weights, i) ? std::exp(tau * (y - m)) : 0.0;
    const double w = weights.empty() ? 1.0 : weights[i];
    if (want_dv) d_values[i] = w * raw / z * (1.0 + tau * (y - out));
    if (want_dw) d_weights[i] = sign * raw * (y - out) / z;
  }
  return sign * out;
}

}  // namespace

double smooth_max_grad(std::span<const double> values, std::span<const double> weights, ReduceMode mode,
                       std::span<double> d_values, std::span<double> d_weights) {
  return reduce(values, weights, mode, 1.0, d_values, d_weights);
}

double smooth_min_grad(std::span<const double> values, std::span<const double> weights, ReduceMode mode,
                       std::span<double> d_values, std::span<double> d_weights) {
  return reduce(values, weights, mode, -1.0, d_values, d_weights);
}

double smooth_max(std::span<const double> values, std::span<const double> weights, ReduceMode mode) {
  return reduce(values, weights, mode, 1.0, {}, {});
}

double smooth_min(std::span<const double> values, std::span<const double> weights, ReduceMode mode) {
  return reduce(values, weights, mode, -1.0, {}, {});
}

double smooth_max2(double x, double y, ReduceMode mode) {
  if (mode.kind == Smoothing::Hard) return x >= y ? x : y;
  const double pair[2] = {x, y};
  return smooth_max(pair, mode);
}

double smooth_min2(double x, double y, ReduceMode mode) {
  if (mode.kind == Smoothing::Hard) return y < x ? y : x;
  const double pair[2] = {x, y};
  return smooth_min(pair, mode);
}

double sigmoid(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

MaskGradient smooth_time_mask_grad(double i, const SmoothInterval& si, std::size_t length) {
  const double len = static_cast<double>(length);
  const double u1 = si.c * (i - si.a * len);
  const double u2 = si.c * (i - si.b * len);
  const double s1 = sigmoid(u1);
  const double s2 = sigmoid(u2);
  const double raw = s1 - s2 - si.eps;
  MaskGradient g;
  if (!(raw > 0.0)) return g;
  g.value = raw;
  const double ds1 = s1 * (1.0 - s1);
  const double ds2 = s2 * (1.0 - s2);
  g.d_a = -ds1 * si.c * len;
  g.d_b = ds2 * si.c * len;
  g.d_c = ds1 * (i - si.a * len) - ds2 * (i - si.b * len);
  return g;
}

double smooth_time_mask(double i, const SmoothInterval& si, std::size_t length) {
  return smooth_time_mask_grad(i, si, length).value;
}

std::vector<double> smooth_mask_weights(const SmoothInterval& si, std::size_t length) {
  std::vector<double> w(length);
  bool any = false;
  for (std::size_t i = 0; i < length; ++i) {
    w[i] = smooth_time_mask(static_cast<double>(i), si, length);
    any = any || w[i] > 0.0;
  }
  if (!any) throw EmptyWindow("smooth interval mask is zero everywhere");
  return w;
}

StepInterval discretize(const SmoothInterval& si, std::size_t length) {
  const double lo = si.a * static_cast<double>(length);
  const double hi = si.b * static_cast<double>(length);
  const double first = std::floor(lo) + 1.0;
  const double last = std::ceil(hi) - 1.0;
  if (last < first || last < 0.0) throw EmptyWindow("no sample lies strictly inside the smooth interval");
  return StepInterval::make(static_cast<std::size_t>(std::max(first, 0.0)), static_cast<std::size_t>(last));
}

void AnnealSchedule::validate() const {
  if (!(start > 0.0) || !(end > 0.0)) throw InvalidArgument("anneal endpoints must be positive");
  if (total_steps == 0) throw InvalidArgument("anneal schedule needs at least one step");
}

double anneal(const AnnealSchedule& schedule, std::size_t step) {
  const double p = std::min(1.0, static_cast<double>(step) / static_cast<double>(schedule.total_steps));
  switch (schedule.kind) {
    case AnnealSchedule::Kind::Constant: return schedule.start;
    case AnnealSchedule::Kind::Linear: return schedule.start + (schedule.end - schedule.start) * p;
    case AnnealSchedule::Kind::Sigmoid: {
      const double lo = sigmoid(-6.0);
      const double hi = sigmoid(6.0);
      const double s = (sigmoid(12.0 * (p - 0.5)) - lo) / (hi - lo);
      if (p >= 1.0) return schedule.end;
      return schedule.start + (schedule.end - schedule.start) * s;
    }
  }
  return schedule.start;
}

}  // namespace stlmask
