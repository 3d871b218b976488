#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "stlmask/core.hpp"
#include "stlmask/formula.hpp"
#include "stlmask/smoothing.hpp"

namespace stlmask {

using Vec2 = std::array<double, 2>;

/// Axis-aligned box [x_lo, x_hi] x [y_lo, y_hi].
struct Box {
  double x_lo = 0.0;
  double x_hi = 1.0;
  double y_lo = 0.0;
  double y_hi = 1.0;
};

struct PlannerConfig {
  double gamma1 = 1.1;  // STL violation
  double gamma2 = 0.05;  // interval size
  double gamma3 = 2.0;  // control limit
  double gamma4 = 0.5;  // effort
  double nominal_size = 0.2;
  double u_max = 2.0;
  double dt = 0.1;
  /// Number of controls; the trajectory has horizon + 1 states.
  std::size_t horizon = 51;
  Box target{0.8, 1.2, 0.8, 1.2};
  Box goal{1.8, 2.2, 1.8, 2.2};
  Vec2 x0{0.0, 0.0};
  double a_init = 0.14;
  double b_init = 0.82;
  /// Standard deviation of the random initial controls.
  double init_scale = 0.1;
  double learning_rate = 0.05;
  std::size_t steps = 2000;
  AnnealSchedule tau = AnnealSchedule::sigmoid(5.0, 200.0, 2000);
  AnnealSchedule c = AnnealSchedule::sigmoid(2.0, 20.0, 2000);
  double eps = 0.0;

  /// Throws InvalidArgument.
  void validate() const;
};

/// x_{t+1} = x_t + dt u_t. Throws InvalidArgument when dt <= 0.
std::vector<Vec2> rollout_single_integrator(Vec2 x0, const std::vector<Vec2>& controls, double dt);

/// G{si}(inside target) & F(inside goal) over channels x and y, where inside
/// a box is the conjunction of its four margins.
Formula planning_formula(const PlannerConfig& cfg, const SmoothInterval& si);

/// Channels x and y of a trajectory.
NamedSignals trajectory_signals(const std::vector<Vec2>& states, double dt);

struct PlanObjective {
  double value = 0.0;
  /// Smooth robustness of the planning formula.
  double rho = 0.0;
  std::vector<Vec2> d_controls;
  double d_pa = 0.0;
  double d_pb = 0.0;
};

/// gamma1 relu(-rho) + gamma2 exp(2 (I - b + a)) + gamma3 mean relu(|u| - u_max)
/// + gamma4 mean |u|^2, with (a, b) obtained from the free parameters through
/// map_interval and rho the smooth robustness under `mode` and mask sharpness `c`.
PlanObjective planning_objective(const std::vector<Vec2>& controls, double p_a, double p_b,
                                 const PlannerConfig& cfg, ReduceMode mode, double c);

struct PlanResult {
  std::vector<Vec2> controls;
  std::vector<Vec2> states;
  double a = 0.0;
  double b = 0.0;
  /// Interval of samples strictly inside (aL, bL).
  StepInterval discrete{0, 0};
  std::vector<double> history;
  double rho_smooth = 0.0;
  /// Hard robustness of the formula with the discrete interval.
  double rho_hard = 0.0;
};

/// Gradient descent over controls and interval parameters, starting from
/// Gaussian controls drawn from `seed`. Throws DivergedError on a non-finite
/// objective.
PlanResult plan_trajectory(const PlannerConfig& cfg, std::uint64_t seed);

}  // namespace stlmask
