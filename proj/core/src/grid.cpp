#include "stlmask/grid.hpp"

#include <algorithm>

#include "stlmask/core.hpp"

namespace stlmask {
namespace {

void check_grid(std::span<const double> grid, const char* name) {
  if (!std::is_sorted(grid.begin(), grid.end())) throw InvalidArgument(std::string(name) + " grid is not sorted");
  for (double v : grid) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument(std::string(name) + " grid leaves [0, 1]");
  }
}

}  // namespace

std::size_t GridResult::valid_cells() const {
  return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [](const auto& v) { return v.has_value(); }));
}

GridResult grid_eval(std::span<const double> a_grid, std::span<const double> b_grid,
                     const std::function<double(double, double)>& objective) {
  check_grid(a_grid, "a");
  check_grid(b_grid, "b");
  GridResult out{{a_grid.begin(), a_grid.end()}, {b_grid.begin(), b_grid.end()}, {}};
  out.values.resize(a_grid.size() * b_grid.size());
  for (std::size_t i = 0; i < a_grid.size(); ++i) {
    for (std::size_t j = 0; j < b_grid.size(); ++j) {
      if (a_grid[i] < b_grid[j]) out.values[i * b_grid.size() + j] = objective(a_grid[i], b_grid[j]);
    }
  }
  return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

}  // namespace stlmask
