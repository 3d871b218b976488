#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "stlmask/core.hpp"
#include "stlmask/formula.hpp"
#include "stlmask/smoothing.hpp"

namespace stlmask {

/// Synthetic signals that are `high` on the samples strictly inside
/// (a L, b L) and `low` elsewhere. Each signal moves its first and last high
/// sample independently by a uniform offset in [-jitter, jitter], then every
/// value gets Gaussian noise of standard deviation `noise`.
struct DatasetConfig {
  std::size_t length = 20;
  double a = 0.23;
  double b = 0.59;
  std::size_t count = 64;
  std::size_t jitter = 1;
  double noise = 0.05;
  double high = 1.0;
  double low = 0.0;

  void validate() const;
};

std::vector<Signal> generate_dataset(const DatasetConfig& cfg, std::uint64_t seed);

/// G{a,b,c,eps} (s > 0), the formula whose interval is mined.
Formula mining_formula(const SmoothInterval& si);

struct MiningLoss {
  double value = 0.0;
  double d_a = 0.0;
  double d_b = 0.0;
};

/// mean over signals of relu(-rho(s, G{a,b,c,eps}(s > 0))) + gamma (a - b),
/// with its partials in a and b. Throws InvalidArgument on an empty dataset
/// and ShapeError on mixed lengths.
MiningLoss mining_objective_grad(double a, double b, std::span<const Signal> data, double gamma, double c,
                                 double eps, ReduceMode mode);
double mining_objective(double a, double b, std::span<const Signal> data, double gamma, double c, double eps,
                        ReduceMode mode);

struct MiningConfig {
  double gamma = 0.2;
  double learning_rate = 1e-2;
  std::size_t steps = 5000;
  AnnealSchedule c = AnnealSchedule::sigmoid(1.0, 100.0, 5000);
  AnnealSchedule tau = AnnealSchedule::sigmoid(1.0, 50.0, 5000);
  Smoothing mode = Smoothing::LogSumExp;
  double a_init = 0.4;
  double b_init = 0.5;
  double eps = 0.0;

  /// Throws InvalidArgument.
  void validate() const;
};

struct MiningResult {
  double a = 0.0;
  double b = 0.0;
  std::vector<double> loss_history;
  /// (a, b) before each step and after the last one.
  std::vector<std::array<double, 2>> path;
};

/// Plain gradient descent on the sigmoid parameters of (a, b) with c and tau
/// annealed per step. Throws DivergedError when the loss stops being finite.
MiningResult mine_interval(std::span<const Signal> data, const MiningConfig& cfg);

}  // namespace stlmask
