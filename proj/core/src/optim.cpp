#include "stlmask/optim.hpp"

#include <cmath>

#include "stlmask/smoothing.hpp"

namespace stlmask {

IntervalParams map_interval(double p_a, double p_b) {
  const double sa = sigmoid(p_a);
  const double sb = sigmoid(p_b);
  IntervalParams m;
  m.swapped = sa > sb;
  const double lo_p = m.swapped ? p_b : p_a;
  const double hi_p = m.swapped ? p_a : p_b;
  m.a = sigmoid(lo_p);
  m.b = sigmoid(hi_p);
  m.da_dsource = m.a * (1.0 - m.a);
  m.db_dsource = m.b * (1.0 - m.b);
  return m;
}

void pull_back(const IntervalParams& m, double d_a, double d_b, double& d_pa, double& d_pb) {
  const double g_lo = d_a * m.da_dsource;
  const double g_hi = d_b * m.db_dsource;
  d_pa = m.swapped ? g_hi : g_lo;
  d_pb = m.swapped ? g_lo : g_hi;
}

double logit(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("logit needs 0 < p < 1");
  return std::log(p / (1.0 - p));
}

}  // namespace stlmask
