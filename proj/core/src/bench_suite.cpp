#include "stlmask/bench_suite.hpp"

#include <random>

namespace stlmask {
namespace {

Formula x_box(int k) {
  return Formula::conjunction(Formula::predicate("x", Comparison::Greater, k),
                              Formula::predicate("x", Comparison::Less, k + 1));
}

Formula y_box(int k) {
  return Formula::conjunction(Formula::predicate("y", Comparison::Greater, k),
                              Formula::predicate("y", Comparison::Less, k + 1));
}

Formula box(int k) { return Formula::conjunction(x_box(k), y_box(k)); }

}  // namespace

std::vector<BenchFormula> bench_formulas(StepInterval window) {
  std::vector<BenchFormula> out;
  out.push_back({"phi1", "invariance", Formula::always(box(1))});
  out.push_back({"phi2", "stabilization", Formula::eventually(Formula::always(box(1)))});
  out.push_back({"phi3", "strict ordering", Formula::until(x_box(1), y_box(1))});

  auto seq = Formula::eventually(box(1), window);
  for (int k = 2; k <= 4; ++k) seq = Formula::eventually(Formula::conjunction(box(k), seq), window);
  out.push_back({"phi4", "sequenced visit pattern", seq});

  const auto stab = Formula::eventually(Formula::always(box(1), window), window);
  out.push_back({"phi5", "sequenced visit with stabilization",
                 Formula::eventually(Formula::conjunction(box(2), stab), window)});

  auto any = Formula::eventually(box(9), window);
  for (int k = 8; k >= 0; --k) any = Formula::conjunction(any, Formula::eventually(box(k), window));
  out.push_back({"phi6", "reach regions in any order", any});
  return out;
}

NamedSignals bench_signals(std::size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<double> xs(length);
  std::vector<double> ys(length);
  for (std::size_t i = 0; i < length; ++i) {
    xs[i] = u(rng);
    ys[i] = u(rng);
  }
  NamedSignals::Map channels;
  channels.emplace("x", make_signal(std::move(xs), 1.0));
  channels.emplace("y", make_signal(std::move(ys), 1.0));
  return NamedSignals(std::move(channels));
}

std::vector<NamedSignals> bench_batch(std::size_t length, std::size_t count, std::uint64_t seed) {
  std::vector<NamedSignals> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(bench_signals(length, seed + i));
  return out;
}

}  // namespace stlmask
