#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stlmask/core.hpp"
#include "stlmask/formula.hpp"

namespace stlmask {

/// One of the six benchmark specifications over channels x and y. Leaf
/// phi_k is k < x < k+1 and psi_k is k < y < k+1; unindexed leaves use k = 1.
struct BenchFormula {
  std::string name;
  std::string description;
  Formula formula;
};

/// phi1..phi6. Timed operators use `window`.
std::vector<BenchFormula> bench_formulas(StepInterval window = {0, 5});

/// Channels x and y drawn uniformly from [0, 10).
NamedSignals bench_signals(std::size_t length, std::uint64_t seed);

/// `count` independent signal sets; item i uses seed + i.
std::vector<NamedSignals> bench_batch(std::size_t length, std::size_t count, std::uint64_t seed);

}  // namespace stlmask
