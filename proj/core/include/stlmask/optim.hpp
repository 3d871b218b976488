#pragma once

#include "stlmask/core.hpp"

namespace stlmask {

/// The objective became non-finite during descent.
class DivergedError : public Error {
 public:
  using Error::Error;
};

/// Normalized interval bounds obtained from two free parameters: both pass
/// through a sigmoid and the pair is sorted, so 0 <= a <= b <= 1 always.
struct IntervalParams {
  double a = 0.0;
  double b = 1.0;
  /// True when sigmoid(p_a) > sigmoid(p_b) and the roles were exchanged.
  bool swapped = false;
  /// Derivatives of a and b with respect to their own source parameter.
  double da_dsource = 0.0;
  double db_dsource = 0.0;
};

IntervalParams map_interval(double p_a, double p_b);

/// Pulls (dL/da, dL/db) back to (dL/dp_a, dL/dp_b).
void pull_back(const IntervalParams& m, double d_a, double d_b, double& d_pa, double& d_pb);

/// Inverse sigmoid; throws InvalidArgument outside (0, 1).
double logit(double p);

}  // namespace stlmask
