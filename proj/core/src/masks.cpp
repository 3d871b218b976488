#include <string>
#include <variant>

#include "detail/window.hpp"
#include "stlmask/masking.hpp"
#include "stlmask/smoothing.hpp"

namespace stlmask::masking {

std::size_t Mask2D::kept_in_column(std::size_t c) const {
  std::size_t n = 0;
  for (std::size_t r = 0; r < rows; ++r) n += at(r, c) ? 1 : 0;
  return n;
}

Mask2D build_subsignal_mask(std::size_t length, std::size_t rows) {
  if (length == 0 || rows < length) throw ShapeError("subsignal mask needs rows >= length >= 1");
  Mask2D m{rows, length, std::vector<std::uint8_t>(rows * length, 0)};
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t t = 0; t < length && t <= r; ++t) m.keep[r * length + t] = 1;
  }
  return m;
}

Mask2D build_time_mask(std::size_t length, StepInterval iv) {
  if (length == 0) throw ShapeError("time mask needs length >= 1");
  const std::size_t rows = length + iv.b;
  Mask2D m{rows, length, std::vector<std::uint8_t>(rows * length, 0)};
  for (std::size_t t = 0; t < length; ++t) {
    for (std::size_t r = t + iv.a; r <= t + iv.b; ++r) m.keep[r * length + t] = 1;
  }
  return m;
}

Mask2D combine_masks(const Mask2D& subsignal, const Mask2D& time) {
  if (subsignal.rows != time.rows || subsignal.cols != time.cols) {
    throw ShapeError("mask shapes differ: " + std::to_string(subsignal.rows) + "x" +
                     std::to_string(subsignal.cols) + " vs " + std::to_string(time.rows) + "x" +
                     std::to_string(time.cols));
  }
  Mask2D m{subsignal.rows, subsignal.cols, std::vector<std::uint8_t>(subsignal.keep.size())};
  for (std::size_t i = 0; i < m.keep.size(); ++i) m.keep[i] = subsignal.keep[i] & time.keep[i];
  return m;
}

Unrolled2D unroll(std::span<const double> trace, std::size_t pad, const PaddingPolicy& padding) {
  if (trace.empty()) throw EmptySignal("cannot unroll an empty trace");
  const auto column = detail::padded(trace, pad, padding);
  const std::size_t cols = trace.size();
  Unrolled2D u{column.size(), cols, std::vector<double>(column.size() * cols)};
  for (std::size_t r = 0; r < u.rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) u.values[r * cols + c] = column[r];
  }
  return u;
}

Unrolled3D unroll3d(std::span<const double> trace, std::size_t pad, std::size_t depth, const PaddingPolicy& padding) {
  if (trace.empty()) throw EmptySignal("cannot unroll an empty trace");
  const auto column = detail::padded(trace, pad, padding);
  const std::size_t cols = trace.size();
  Unrolled3D u{column.size(), cols, depth, std::vector<double>(column.size() * cols * depth)};
  for (std::size_t r = 0; r < u.rows; ++r) {
    for (std::size_t i = r * cols * depth; i < (r + 1) * cols * depth; ++i) u.values[i] = column[r];
  }
  return u;
}

UntilMasks build_until_masks(std::size_t length, StepInterval iv) {
  if (length == 0) throw ShapeError("until masks need length >= 1");
  const std::size_t rows = length + iv.b;
  const std::size_t depth = window_size(iv);
  UntilMasks m;
  m.left = Mask3D{rows, length, depth, std::vector<std::uint8_t>(rows * length * depth, 0)};
  m.right = m.left;
  for (std::size_t t = 0; t < length; ++t) {
    for (std::size_t k = 0; k < depth; ++k) {
      const std::size_t i = iv.a + k;
      for (std::size_t r = t; r <= t + i; ++r) m.left.keep[(r * length + t) * depth + k] = 1;
      m.right.keep[((t + i) * length + t) * depth + k] = 1;
    }
  }
  return m;
}

namespace {

// Untimed Until over the bare signal: slice k looks k steps ahead and is
// clipped at the last row, so slices past the end are empty on the right.
UntilMasks build_untimed_until_masks(std::size_t length) {
  UntilMasks m;
  m.left = Mask3D{length, length, length, std::vector<std::uint8_t>(length * length * length, 0)};
  m.right = m.left;
  for (std::size_t t = 0; t < length; ++t) {
    for (std::size_t k = 0; t + k < length; ++k) {
      for (std::size_t r = t; r <= t + k; ++r) m.left.keep[(r * length + t) * length + k] = 1;
      m.right.keep[((t + k) * length + t) * length + k] = 1;
    }
  }
  return m;
}

// Reduce column c of a masked array, either over kept rows only or over the
// whole column with masked rows replaced by the sentinel.
template <typename Get, typename Keep>
double reduce_masked(std::size_t rows, Get&& get, Keep&& keep, const SemanticsConfig& cfg, bool take_max,
                     std::vector<double>& scratch) {
  scratch.clear();
  const double fill = take_max ? -cfg.sentinel : cfg.sentinel;
  for (std::size_t r = 0; r < rows; ++r) {
    if (keep(r)) scratch.push_back(get(r));
    else if (cfg.sentinel_fill) scratch.push_back(fill);
  }
  if (scratch.empty()) throw EmptyWindow("column has no kept entries");
  return take_max ? smooth_max(scratch, cfg.mode) : smooth_min(scratch, cfg.mode);
}

RobustnessTrace dense_temporal(std::span<const double> inner, const Interval& iv, const SemanticsConfig& cfg,
                               bool take_max) {
  cfg.validate();
  if (inner.empty()) throw EmptySignal("empty child trace");
  if (std::holds_alternative<SmoothInterval>(iv)) {
    throw UnsupportedError("dense masks are boolean; smooth intervals use the weighted path");
  }
  const std::size_t length = inner.size();
  const std::size_t pad = detail::pad_length(length, iv);
  const auto unrolled = unroll(inner, pad, cfg.padding);
  Mask2D mask;
  if (const auto* step = std::get_if<StepInterval>(&iv)) {
    mask = combine_masks(build_subsignal_mask(length, length + pad), build_time_mask(length, *step));
  } else {
    mask = build_subsignal_mask(length, length);
  }
  RobustnessTrace out(length);
  std::vector<double> scratch;
  for (std::size_t t = 0; t < length; ++t) {
    out[t] = reduce_masked(
        mask.rows, [&](std::size_t r) { return unrolled.at(r, t); }, [&](std::size_t r) { return mask.at(r, t); },
        cfg, take_max, scratch);
  }
  return out;
}

}  // namespace

namespace dense {

RobustnessTrace eventually_trace(std::span<const double> inner, const Interval& iv, const SemanticsConfig& cfg) {
  return dense_temporal(inner, iv, cfg, true);
}

RobustnessTrace always_trace(std::span<const double> inner, const Interval& iv, const SemanticsConfig& cfg) {
  return dense_temporal(inner, iv, cfg, false);
}

RobustnessTrace until_trace(std::span<const double> left, std::span<const double> right, const Interval& iv,
                            const SemanticsConfig& cfg) {
  cfg.validate();
  if (left.size() != right.size()) throw ShapeError("until operands differ in length");
  if (left.empty()) throw EmptySignal("empty child trace");
  if (std::holds_alternative<SmoothInterval>(iv)) throw UnsupportedError("smooth intervals on Until");
  const std::size_t length = left.size();
  const auto* step = std::get_if<StepInterval>(&iv);
  const std::size_t pad = detail::pad_length(length, iv);
  const auto masks = step ? build_until_masks(length, *step) : build_untimed_until_masks(length);
  const std::size_t depth = masks.left.depth;
  const auto s_left = unroll3d(left, pad, depth, cfg.padding);
  const auto s_right = unroll3d(right, pad, depth, cfg.padding);

  RobustnessTrace out(length);
  std::vector<double> scratch;
  std::vector<double> s2;
  for (std::size_t t = 0; t < length; ++t) {
    s2.clear();
    for (std::size_t k = 0; k < depth; ++k) {
      bool right_kept = false;
      for (std::size_t r = 0; r < masks.right.rows && !right_kept; ++r) right_kept = masks.right.at(r, t, k);
      if (!right_kept) continue;  // untimed slice beyond the last sample
      // S1: per-slice minima of both operands.
      const double s1_left = reduce_masked(
          masks.left.rows, [&](std::size_t r) { return s_left.at(r, t, k); },
          [&](std::size_t r) { return masks.left.at(r, t, k); }, cfg, false, scratch);
      const double s1_right = reduce_masked(
          masks.right.rows, [&](std::size_t r) { return s_right.at(r, t, k); },
          [&](std::size_t r) { return masks.right.at(r, t, k); }, cfg, false, scratch);
      // S2: minimum over the stacked pair.
      s2.push_back(smooth_min2(s1_left, s1_right, cfg.mode));
    }
    // S3: maximum over the K axis.
    out[t] = smooth_max(s2, cfg.mode);
  }
  return out;
}

}  // namespace dense

}  // namespace stlmask::masking
