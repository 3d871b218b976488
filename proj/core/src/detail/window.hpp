#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "stlmask/core.hpp"
#include "stlmask/formula.hpp"

namespace stlmask::detail {

/// Rows appended past the last sample for a given interval.
inline std::size_t pad_length(std::size_t length, const Interval& iv) {
  if (const auto* step = std::get_if<StepInterval>(&iv)) return step->b;
  if (std::holds_alternative<SmoothInterval>(iv)) return length - 1;
  return 0;
}

inline double pad_value(std::span<const double> trace, const PaddingPolicy& padding) {
  return padding.kind == PaddingPolicy::Kind::LastValue ? trace.back() : padding.value;
}

/// `trace` followed by `pad` padding samples.
inline std::vector<double> padded(std::span<const double> trace, std::size_t pad, const PaddingPolicy& padding) {
  std::vector<double> out(trace.begin(), trace.end());
  out.resize(trace.size() + pad, pad_value(trace, padding));
  return out;
}

/// Inclusive range of padded rows kept in column t.
struct RowRange {
  std::size_t first;
  std::size_t last;

  std::size_t size() const { return last - first + 1; }
};

inline RowRange column_rows(std::size_t t, std::size_t length, const Interval& iv) {
  if (const auto* step = std::get_if<StepInterval>(&iv)) return {t + step->a, t + step->b};
  if (std::holds_alternative<SmoothInterval>(iv)) return {t, t + length - 1};
  return {t, length - 1};
}

/// Candidate Until steps i for column t: [a, b] when timed, [0, L-1-t] otherwise.
inline RowRange until_steps(std::size_t t, std::size_t length, const Interval& iv) {
  if (const auto* step = std::get_if<StepInterval>(&iv)) return {step->a, step->b};
  return {0, length - 1 - t};
}

}  // namespace stlmask::detail
