#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stlmask/core.hpp"

namespace stlmask::cli {

struct BenchOptions {
  std::vector<std::size_t> sizes{32, 64, 128, 256, 512};
  std::size_t reps = 10;
  std::size_t warmup = 3;
  std::size_t batch = 8;
  std::uint64_t seed = 0;
  /// Mode for value timings; gradients always use LogSumExp at this temperature.
  ReduceMode mode = ReduceMode::hard();
  double grad_temperature = 10.0;
  bool gradients = true;

  /// Throws InvalidArgument when reps < 10, a size is 0 or batch is 0.
  void validate() const;
};

struct BenchTiming {
  std::string formula;
  std::string engine;  // masking | recurrent
  std::string kind;    // value | gradient
  std::size_t length = 0;
  double median_ms = 0.0;
  double iqr_ms = 0.0;
  std::size_t reps = 0;
};

struct BenchReport {
  BenchOptions options;
  std::vector<BenchTiming> timings;

  /// masking median / recurrent median - 1 for a formula, length and kind.
  double relative(const std::string& formula, std::size_t length, const std::string& kind) const;
};

/// Times both engines on phi1..phi6 over a batch of random signals per length.
BenchReport run_bench(const BenchOptions& opt);

}  // namespace stlmask::cli
