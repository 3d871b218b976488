#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "stlmask/core.hpp"
#include "stlmask/formula.hpp"

// Robustness traces computed all at once: the child trace is unrolled into a
// (rows x L) array whose column t replicates the padded trace, a boolean mask
// keeps the entries inside column t's window, and each column is reduced.
// Until unrolls one level further into K slices, one per candidate step i.
namespace stlmask::masking {

/// Boolean keep-mask over an unrolled array, row-major.
struct Mask2D {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> keep;

  bool at(std::size_t r, std::size_t c) const { return keep[r * cols + c] != 0; }
  std::size_t kept_in_column(std::size_t c) const;
};

/// R x L array; every column holds the same padded trace.
struct Unrolled2D {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

/// R x L x K keep-mask; index (r, c, k).
struct Mask3D {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t depth = 0;
  std::vector<std::uint8_t> keep;

  bool at(std::size_t r, std::size_t c, std::size_t k) const {
    return keep[(r * cols + c) * depth + k] != 0;
  }
};

struct Unrolled3D {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t depth = 0;
  std::vector<double> values;

  double at(std::size_t r, std::size_t c, std::size_t k) const {
    return values[(r * cols + c) * depth + k];
  }
};

/// Keeps (r, t) iff r >= t: column t sees the suffix starting at t.
/// Requires rows >= length >= 1.
Mask2D build_subsignal_mask(std::size_t length, std::size_t rows);

/// Keeps (r, t) iff t + a <= r <= t + b, over length + b rows.
Mask2D build_time_mask(std::size_t length, StepInterval iv);

/// Intersection of kept regions. Throws ShapeError on mismatched shapes.
Mask2D combine_masks(const Mask2D& subsignal, const Mask2D& time);

/// Replicates `trace` extended by `pad` rows of padding into every column.
Unrolled2D unroll(std::span<const double> trace, std::size_t pad, const PaddingPolicy& padding);

/// Same, with `depth` copies along the third axis.
Unrolled3D unroll3d(std::span<const double> trace, std::size_t pad, std::size_t depth,
                    const PaddingPolicy& padding);

/// Slice k keeps rows t..t+(a+k) of column t on the left operand and only row
/// t+(a+k) on the right operand.
struct UntilMasks {
  Mask3D left;
  Mask3D right;
};
UntilMasks build_until_masks(std::size_t length, StepInterval iv);

// Temporal operators over a child trace. An absent interval covers the rest of
// the signal without padding; a step interval pads b samples; a smooth interval
// weights relative positions 0..L-1 by the sigmoid mask and pads L-1 samples.
RobustnessTrace eventually_trace(std::span<const double> inner, const Interval& iv, const SemanticsConfig& cfg);
RobustnessTrace always_trace(std::span<const double> inner, const Interval& iv, const SemanticsConfig& cfg);
/// Throws ShapeError when the operands differ in length.
RobustnessTrace until_trace(std::span<const double> left, std::span<const double> right, const Interval& iv,
                            const SemanticsConfig& cfg);

/// Full robustness trace of `f`. Throws InvalidArgument if a variable has no channel.
RobustnessTrace robustness_trace(const Formula& f, const NamedSignals& signals, const SemanticsConfig& cfg);

/// Entry 0 of the trace.
double robustness(const Formula& f, const NamedSignals& signals, const SemanticsConfig& cfg);

/// The same operators evaluated on fully materialized unrolled arrays and
/// masks. Memory is O(L^2) (O(L^2 K) for Until); used for verification and
/// for sentinel-fill mode, where masked entries take -/+cfg.sentinel and whole
/// columns are reduced.
namespace dense {

RobustnessTrace eventually_trace(std::span<const double> inner, const Interval& iv, const SemanticsConfig& cfg);
RobustnessTrace always_trace(std::span<const double> inner, const Interval& iv, const SemanticsConfig& cfg);
RobustnessTrace until_trace(std::span<const double> left, std::span<const double> right, const Interval& iv,
                            const SemanticsConfig& cfg);

}  // namespace dense

}  // namespace stlmask::masking
