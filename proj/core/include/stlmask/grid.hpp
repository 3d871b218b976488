#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace stlmask {

/// Loss over every (a, b) grid pair. Cells with a >= b hold no value.
struct GridResult {
  std::vector<double> a_grid;
  std::vector<double> b_grid;
  /// Row-major, one row per a value.
  std::vector<std::optional<double>> values;

  const std::optional<double>& at(std::size_t i, std::size_t j) const { return values[i * b_grid.size() + j]; }
  std::size_t valid_cells() const;
};

/// Throws InvalidArgument unless both grids are sorted ascending within [0, 1].
GridResult grid_eval(std::span<const double> a_grid, std::span<const double> b_grid,
                     const std::function<double(double, double)>& objective);

/// n points spaced evenly over [lo, hi].
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace stlmask
