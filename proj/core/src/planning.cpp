#include "stlmask/planning.hpp"

#include <cmath>
#include <random>

#include "stlmask/autodiff.hpp"
#include "stlmask/masking.hpp"
#include "stlmask/optim.hpp"

namespace stlmask {
namespace {

void check_box(const Box& box, const char* name) {
  if (!(box.x_lo < box.x_hi && box.y_lo < box.y_hi)) {
    throw InvalidArgument(std::string(name) + " box has empty extent");
  }
}

Formula inside(const Box& box) {
  const auto px = Formula::conjunction(Formula::predicate("x", Comparison::Greater, box.x_lo),
                                       Formula::predicate("x", Comparison::Less, box.x_hi));
  const auto py = Formula::conjunction(Formula::predicate("y", Comparison::Greater, box.y_lo),
                                       Formula::predicate("y", Comparison::Less, box.y_hi));
  return Formula::conjunction(px, py);
}

Formula planning_formula_with(const PlannerConfig& cfg, const Interval& target_window) {
  return Formula::conjunction(Formula::always(inside(cfg.target), target_window),
                              Formula::eventually(inside(cfg.goal)));
}

}  // namespace

void PlannerConfig::validate() const {
  for (double g : {gamma1, gamma2, gamma3, gamma4}) {
    if (!(g >= 0.0)) throw InvalidArgument("planner weights must be non-negative");
  }
  if (!(u_max > 0.0)) throw InvalidArgument("control limit must be positive");
  if (!(nominal_size > 0.0 && nominal_size < 1.0)) throw InvalidArgument("nominal interval size must lie in (0, 1)");
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (horizon < 2) throw InvalidArgument("horizon must be at least 2");
  check_box(target, "target");
  check_box(goal, "goal");
  if (!(0.0 < a_init && a_init < b_init && b_init < 1.0)) throw InvalidArgument("initial interval needs 0 < a < b < 1");
  if (!(init_scale >= 0.0)) throw InvalidArgument("init_scale must be non-negative");
  if (!(learning_rate > 0.0)) throw InvalidArgument("learning rate must be positive");
  if (steps == 0) throw InvalidArgument("planning needs at least one step");
  tau.validate();
  c.validate();
  if (!(eps >= 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in [0, 1)");
}

std::vector<Vec2> rollout_single_integrator(Vec2 x0, const std::vector<Vec2>& controls, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  std::vector<Vec2> states;
  states.reserve(controls.size() + 1);
  states.push_back(x0);
  for (const auto& u : controls) {
    const auto& x = states.back();
    states.push_back({x[0] + dt * u[0], x[1] + dt * u[1]});
  }
  return states;
}

Formula planning_formula(const PlannerConfig& cfg, const SmoothInterval& si) {
  return planning_formula_with(cfg, si);
}

NamedSignals trajectory_signals(const std::vector<Vec2>& states, double dt) {
  std::vector<double> xs(states.size());
  std::vector<double> ys(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    xs[i] = states[i][0];
    ys[i] = states[i][1];
  }
  NamedSignals::Map channels;
  channels.emplace("x", make_signal(std::move(xs), dt));
  channels.emplace("y", make_signal(std::move(ys), dt));
  return NamedSignals(std::move(channels));
}

PlanObjective planning_objective(const std::vector<Vec2>& controls, double p_a, double p_b,
                                 const PlannerConfig& cfg, ReduceMode mode, double c) {
  if (controls.size() != cfg.horizon) throw ShapeError("expected one control per horizon step");
  const auto m = map_interval(p_a, p_b);
  const SmoothInterval si{m.a, m.b, c, cfg.eps};
  const auto states = rollout_single_integrator(cfg.x0, controls, cfg.dt);
  const auto signals = trajectory_signals(states, cfg.dt);
  SemanticsConfig sem;
  sem.mode = mode;
  sem.padding = PaddingPolicy::last_value();
  const auto g = value_and_grad(planning_formula(cfg, si), signals, sem);

  PlanObjective out;
  out.rho = g.value;
  const double n = static_cast<double>(cfg.horizon);
  const double violation = g.value < 0.0 ? -g.value : 0.0;
  const double size_term = std::exp(2.0 * (cfg.nominal_size - m.b + m.a));
  double limit = 0.0;
  double effort = 0.0;
  for (const auto& u : controls) {
    const double norm = std::hypot(u[0], u[1]);
    limit += norm > cfg.u_max ? norm - cfg.u_max : 0.0;
    effort += u[0] * u[0] + u[1] * u[1];
  }
  out.value = cfg.gamma1 * violation + cfg.gamma2 * size_term + cfg.gamma3 * limit / n + cfg.gamma4 * effort / n;

  // d/dx_s of the STL term, then x_s = x0 + dt sum_{t<s} u_t.
  const double w = g.value < 0.0 ? -cfg.gamma1 : 0.0;
  const auto& dx = g.d_signal.at("x");
  const auto& dy = g.d_signal.at("y");
  out.d_controls.assign(controls.size(), Vec2{0.0, 0.0});
  double acc_x = 0.0;
  double acc_y = 0.0;
  for (std::size_t t = controls.size(); t-- > 0;) {
    acc_x += w * dx[t + 1];
    acc_y += w * dy[t + 1];
    const auto& u = controls[t];
    const double norm = std::hypot(u[0], u[1]);
    const double lim = norm > cfg.u_max ? cfg.gamma3 / (n * norm) : 0.0;
    out.d_controls[t][0] = cfg.dt * acc_x + lim * u[0] + 2.0 * cfg.gamma4 * u[0] / n;
    out.d_controls[t][1] = cfg.dt * acc_y + lim * u[1] + 2.0 * cfg.gamma4 * u[1] / n;
  }

  const double d_a = w * g.d_interval.at(0).d_a + 2.0 * cfg.gamma2 * size_term;
  const double d_b = w * g.d_interval.at(0).d_b - 2.0 * cfg.gamma2 * size_term;
  pull_back(m, d_a, d_b, out.d_pa, out.d_pb);
  return out;
}

PlanResult plan_trajectory(const PlannerConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> init(0.0, cfg.init_scale);
  PlanResult result;
  result.controls.resize(cfg.horizon);
  for (auto& u : result.controls) {
    u[0] = cfg.init_scale > 0.0 ? init(rng) : 0.0;
    u[1] = cfg.init_scale > 0.0 ? init(rng) : 0.0;
  }
  double pa = logit(cfg.a_init);
  double pb = logit(cfg.b_init);

  result.history.reserve(cfg.steps);
  for (std::size_t k = 0; k < cfg.steps; ++k) {
    const ReduceMode mode = ReduceMode::logsumexp(anneal(cfg.tau, k));
    const auto obj = planning_objective(result.controls, pa, pb, cfg, mode, anneal(cfg.c, k));
    if (!std::isfinite(obj.value)) throw DivergedError("planning objective is not finite at step " + std::to_string(k));
    result.history.push_back(obj.value);
    for (std::size_t t = 0; t < cfg.horizon; ++t) {
      result.controls[t][0] -= cfg.learning_rate * obj.d_controls[t][0];
      result.controls[t][1] -= cfg.learning_rate * obj.d_controls[t][1];
    }
    pa -= cfg.learning_rate * obj.d_pa;
    pb -= cfg.learning_rate * obj.d_pb;
  }

  const auto m = map_interval(pa, pb);
  result.a = m.a;
  result.b = m.b;
  result.states = rollout_single_integrator(cfg.x0, result.controls, cfg.dt);
  const auto signals = trajectory_signals(result.states, cfg.dt);
  const std::size_t length = result.states.size();
  const SmoothInterval si{m.a, m.b, anneal(cfg.c, cfg.steps), cfg.eps};

  SemanticsConfig sem;
  sem.padding = PaddingPolicy::last_value();
  sem.mode = ReduceMode::logsumexp(anneal(cfg.tau, cfg.steps));
  result.rho_smooth = masking::robustness(planning_formula(cfg, si), signals, sem);
  result.discrete = discretize(si, length);
  sem.mode = ReduceMode::hard();
  result.rho_hard = masking::robustness(planning_formula_with(cfg, result.discrete), signals, sem);
  return result;
}

}  // namespace stlmask
