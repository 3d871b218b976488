#include "stlmask/mining.hpp"

#include <cmath>
#include <random>

#include "stlmask/optim.hpp"

namespace stlmask {

void DatasetConfig::validate() const {
  if (length < 2) throw InvalidArgument("dataset length must be at least 2");
  if (!(0.0 <= a && a < b && b <= 1.0)) throw InvalidArgument("dataset interval needs 0 <= a < b <= 1");
  if (count == 0) throw InvalidArgument("dataset needs at least one signal");
  if (!(noise >= 0.0) || !std::isfinite(noise)) throw InvalidArgument("noise must be finite and non-negative");
}

std::vector<Signal> generate_dataset(const DatasetConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  std::mt19937_64 rng(seed);
  const auto span = static_cast<long>(cfg.jitter);
  std::uniform_int_distribution<long> shift(-span, span);
  std::normal_distribution<double> noise(0.0, cfg.noise);

  const double len = static_cast<double>(cfg.length);
  const long first = static_cast<long>(std::floor(cfg.a * len)) + 1;
  const long last = static_cast<long>(std::ceil(cfg.b * len)) - 1;
  std::vector<Signal> out;
  out.reserve(cfg.count);
  for (std::size_t n = 0; n < cfg.count; ++n) {
    const long lo = first + shift(rng);
    const long hi = last + shift(rng);
    std::vector<double> s(cfg.length);
    for (std::size_t i = 0; i < cfg.length; ++i) {
      const auto li = static_cast<long>(i);
      s[i] = (li >= lo && li <= hi ? cfg.high : cfg.low) + (cfg.noise > 0.0 ? noise(rng) : 0.0);
    }
    out.emplace_back(std::move(s), 1.0);
  }
  return out;
}

Formula mining_formula(const SmoothInterval& si) {
  return Formula::always(Formula::predicate("s", Comparison::Greater, 0.0), si);
}

// Entry 0 of G over a smooth interval reduces rows 0..L-1 of column 0, which
// are the predicate values themselves, so no padding is involved.
MiningLoss mining_objective_grad(double a, double b, std::span<const Signal> data, double gamma, double c,
                                 double eps, ReduceMode mode) {
  if (data.empty()) throw InvalidArgument("mining needs a non-empty dataset");
  const std::size_t length = data.front().size();
  for (const auto& s : data) {
    if (s.size() != length) throw ShapeError("dataset signals differ in length");
  }
  const SmoothInterval si{a, b, c, eps};
  const auto weights = smooth_mask_weights(si, length);

  MiningLoss out;
  std::vector<double> dw_total(length, 0.0);
  std::vector<double> dv(length);
  std::vector<double> dw(length);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (const auto& s : data) {
    const double rho = smooth_min_grad(s.values(), weights, mode, dv, dw);
    if (rho >= 0.0) continue;
    out.value -= rho * scale;
    for (std::size_t j = 0; j < length; ++j) dw_total[j] -= dw[j] * scale;
  }
  for (std::size_t j = 0; j < length; ++j) {
    if (dw_total[j] == 0.0) continue;
    const auto mg = smooth_time_mask_grad(static_cast<double>(j), si, length);
    out.d_a += dw_total[j] * mg.d_a;
    out.d_b += dw_total[j] * mg.d_b;
  }
  out.value += gamma * (a - b);
  out.d_a += gamma;
  out.d_b -= gamma;
  return out;
}

double mining_objective(double a, double b, std::span<const Signal> data, double gamma, double c, double eps,
                        ReduceMode mode) {
  return mining_objective_grad(a, b, data, gamma, c, eps, mode).value;
}

void MiningConfig::validate() const {
  if (!(gamma >= 0.0)) throw InvalidArgument("gamma must be non-negative");
  if (!(learning_rate > 0.0)) throw InvalidArgument("learning rate must be positive");
  if (steps == 0) throw InvalidArgument("mining needs at least one step");
  c.validate();
  tau.validate();
  if (!(0.0 < a_init && a_init < b_init && b_init < 1.0)) throw InvalidArgument("initial interval needs 0 < a < b < 1");
  if (!(eps >= 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in [0, 1)");
}

MiningResult mine_interval(std::span<const Signal> data, const MiningConfig& cfg) {
  cfg.validate();
  double pa = logit(cfg.a_init);
  double pb = logit(cfg.b_init);
  MiningResult result;
  result.loss_history.reserve(cfg.steps);
  result.path.reserve(cfg.steps + 1);
  for (std::size_t k = 0; k < cfg.steps; ++k) {
    const auto m = map_interval(pa, pb);
    result.path.push_back({m.a, m.b});
    const ReduceMode mode{cfg.mode, anneal(cfg.tau, k)};
    const auto loss = mining_objective_grad(m.a, m.b, data, cfg.gamma, anneal(cfg.c, k), cfg.eps, mode);
    if (!std::isfinite(loss.value) || !std::isfinite(loss.d_a) || !std::isfinite(loss.d_b)) {
      throw DivergedError("mining loss is not finite at step " + std::to_string(k));
    }
    result.loss_history.push_back(loss.value);
    double g_pa = 0.0;
    double g_pb = 0.0;
    pull_back(m, loss.d_a, loss.d_b, g_pa, g_pb);
    pa -= cfg.learning_rate * g_pa;
    pb -= cfg.learning_rate * g_pb;
  }
  const auto m = map_interval(pa, pb);
  result.a = m.a;
  result.b = m.b;
  result.path.push_back({m.a, m.b});
  return result;
}

}  // namespace stlmask
