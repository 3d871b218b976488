#include "stlmask/recurrent.hpp"

#include <cstdint>
#include <deque>
#include <variant>
#include <vector>

#include "detail/pointwise.hpp"
#include "stlmask/smoothing.hpp"

namespace stlmask::recurrent {
namespace {

// Scalar arithmetic on plain doubles.
struct Plain {
  using Value = double;

  ReduceMode mode;

  double max2(double x, double y) const { return smooth_max2(x, y, mode); }
  double min2(double x, double y) const { return smooth_min2(x, y, mode); }
  double neg(double x) const { return -x; }
  double constant(double v) const { return v; }
  double leaf(const std::string&, std::span<const double> xs, std::size_t t, double sign, double c) const {
    return sign * (xs[t] - c);
  }
};

// Records every operation as a node with up to two weighted parents, then
// accumulates adjoints in reverse order.
class Recorder {
 public:
  using Value = std::uint32_t;

  explicit Recorder(ReduceMode mode) : mode_(mode) {}

  Value max2(Value x, Value y) { return pair(x, y, true); }
  Value min2(Value x, Value y) { return pair(x, y, false); }
  Value neg(Value x) { return push(-values_[x], x, -1.0, kNone, 0.0); }
  Value constant(double v) { return push(v, kNone, 0.0, kNone, 0.0); }
  Value leaf(const std::string& name, std::span<const double> xs, std::size_t t, double sign, double c) {
    const Value id = push(sign * (xs[t] - c), kNone, 0.0, kNone, 0.0);
    leaves_.push_back({id, &name, t, sign});
    return id;
  }

  double value(Value v) const { return values_[v]; }

  std::map<std::string, std::vector<double>, std::less<>> backward(Value out, const NamedSignals& signals) const {
    std::vector<double> adj(values_.size(), 0.0);
    adj[out] = 1.0;
    for (std::size_t i = values_.size(); i-- > 0;) {
      if (adj[i] == 0.0) continue;
      const auto& n = nodes_[i];
      if (n.p1 != kNone) adj[n.p1] += n.w1 * adj[i];
      if (n.p2 != kNone) adj[n.p2] += n.w2 * adj[i];
    }
    std::map<std::string, std::vector<double>, std::less<>> d;
    for (const auto& [name, sig] : signals) d.emplace(name, std::vector<double>(sig.size(), 0.0));
    for (const auto& l : leaves_) d.find(*l.name)->second[l.t] += l.sign * adj[l.id];
    return d;
  }

 private:
  static constexpr Value kNone = 0xffffffffu;

  struct Node {
    Value p1;
    double w1;
    Value p2;
    double w2;
  };
  struct Leaf {
    Value id;
    const std::string* name;
    std::size_t t;
    double sign;
  };

  Value push(double v, Value p1, double w1, Value p2, double w2) {
    values_.push_back(v);
    nodes_.push_back({p1, w1, p2, w2});
    return static_cast<Value>(values_.size() - 1);
  }

  Value pair(Value x, Value y, bool take_max) {
    const double xs[2] = {values_[x], values_[y]};
    double d[2];
    const double v = take_max ? smooth_max_grad(xs, {}, mode_, d, {}) : smooth_min_grad(xs, {}, mode_, d, {});
    return push(v, x, d[0], y, d[1]);
  }

  ReduceMode mode_;
  std::vector<double> values_;
  std::vector<Node> nodes_;
  std::vector<Leaf> leaves_;
};

template <typename Num>
using Trace = std::vector<typename Num::Value>;

const StepInterval* step_of(const Interval& iv) {
  if (std::holds_alternative<SmoothInterval>(iv)) {
    throw UnsupportedError("the recurrent engine has no smooth-interval form");
  }
  return std::get_if<StepInterval>(&iv);
}

template <typename Num>
Trace<Num> padded(Num& num, const Trace<Num>& s, std::size_t pad, const PaddingPolicy& padding) {
  Trace<Num> out = s;
  const auto fill = padding.kind == PaddingPolicy::Kind::LastValue ? s.back() : num.constant(padding.value);
  out.resize(s.size() + pad, fill);
  return out;
}

template <typename Num>
typename Num::Value reduce2(Num& num, typename Num::Value acc, typename Num::Value incoming, bool take_max) {
  return take_max ? num.max2(acc, incoming) : num.min2(acc, incoming);
}

// Folds the buffer from its far end toward its front.
template <typename Num>
typename Num::Value fold_back(Num& num, const std::deque<typename Num::Value>& buf, bool take_max) {
  auto acc = buf.back();
  for (std::size_t j = buf.size() - 1; j-- > 0;) acc = reduce2(num, acc, buf[j], take_max);
  return acc;
}

template <typename Num>
Trace<Num> temporal(Num& num, const Trace<Num>& s, const Interval& iv, const SemanticsConfig& cfg, bool take_max) {
  const std::size_t length = s.size();
  Trace<Num> y(length);
  const auto* step = step_of(iv);
  if (!step) {
    y[length - 1] = s[length - 1];
    for (std::size_t t = length - 1; t-- > 0;) y[t] = reduce2(num, y[t + 1], s[t], take_max);
    return y;
  }
  const auto col = padded(num, s, step->b, cfg.padding);
  const std::size_t last = length - 1;
  std::deque<typename Num::Value> buf(col.begin() + static_cast<std::ptrdiff_t>(last + step->a),
                                      col.begin() + static_cast<std::ptrdiff_t>(last + step->b + 1));
  for (std::size_t t = last;; --t) {
    y[t] = fold_back(num, buf, take_max);
    if (t == 0) break;
    buf.pop_back();
    buf.push_front(col[t - 1 + step->a]);
  }
  return y;
}

template <typename Num>
Trace<Num> until(Num& num, const Trace<Num>& phi, const Trace<Num>& psi, const Interval& iv,
                 const SemanticsConfig& cfg) {
  const std::size_t length = phi.size();
  const auto* step = step_of(iv);
  const std::size_t pad = step ? step->b : 0;
  const auto pcol = padded(num, phi, pad, cfg.padding);
  const auto qcol = padded(num, psi, pad, cfg.padding);
  const std::size_t first = step ? step->a : 0;

  // Hidden state: phi over [t, t+b] and psi over [t, t+b]. Untimed, both
  // buffers hold the whole suffix.
  std::deque<typename Num::Value> pbuf;
  std::deque<typename Num::Value> qbuf;
  const std::size_t last = length - 1;
  if (step) {
    pbuf.assign(pcol.begin() + static_cast<std::ptrdiff_t>(last), pcol.end());
    qbuf.assign(qcol.begin() + static_cast<std::ptrdiff_t>(last), qcol.end());
  } else {
    pbuf.push_back(pcol[last]);
    qbuf.push_back(qcol[last]);
  }

  Trace<Num> y(length);
  Trace<Num> prefix;
  for (std::size_t t = last;; --t) {
    prefix.assign(1, pbuf[0]);
    for (std::size_t i = 1; i < pbuf.size(); ++i) prefix.push_back(num.min2(prefix.back(), pbuf[i]));
    const std::size_t far = pbuf.size() - 1;
    auto acc = num.min2(prefix[far], qbuf[far]);
    for (std::size_t i = far; i-- > first;) acc = num.max2(acc, num.min2(prefix[i], qbuf[i]));
    y[t] = acc;
    if (t == 0) break;
    if (step) {
      pbuf.pop_back();
      qbuf.pop_back();
    }
    pbuf.push_front(pcol[t - 1]);
    qbuf.push_front(qcol[t - 1]);
  }
  return y;
}

template <typename Num>
Trace<Num> trace_of(Num& num, const Formula& f, const NamedSignals& signals, const SemanticsConfig& cfg) {
  const std::size_t length = signals.length();
  switch (f.op()) {
    case Op::True: return Trace<Num>(length, num.constant(cfg.rho_max));
    case Op::Predicate: {
      const auto xs = signals.at(f.variable()).values();
      const double sign = detail::predicate_sign(f.comparison());
      Trace<Num> out(length);
      for (std::size_t t = 0; t < length; ++t) out[t] = num.leaf(f.variable(), xs, t, sign, f.threshold());
      return out;
    }
    case Op::Not: {
      auto out = trace_of(num, f.child(), signals, cfg);
      for (auto& v : out) v = num.neg(v);
      return out;
    }
    case Op::And:
    case Op::Or: {
      const auto lhs = trace_of(num, f.left(), signals, cfg);
      const auto rhs = trace_of(num, f.right(), signals, cfg);
      Trace<Num> out(length);
      for (std::size_t t = 0; t < length; ++t) out[t] = reduce2(num, lhs[t], rhs[t], f.op() == Op::Or);
      return out;
    }
    case Op::Eventually: return temporal(num, trace_of(num, f.child(), signals, cfg), f.interval(), cfg, true);
    case Op::Always: return temporal(num, trace_of(num, f.child(), signals, cfg), f.interval(), cfg, false);
    case Op::Until:
      return until(num, trace_of(num, f.left(), signals, cfg), trace_of(num, f.right(), signals, cfg), f.interval(),
                   cfg);
  }
  throw UnsupportedError("unknown operator");
}

}  // namespace

RobustnessTrace trace_recurrent(const Formula& f, const NamedSignals& signals, const SemanticsConfig& cfg) {
  detail::check_evaluable(f, signals, cfg);
  Plain num{cfg.mode};
  return trace_of(num, f, signals, cfg);
}

Gradients value_and_grad(const Formula& f, const NamedSignals& signals, const SemanticsConfig& cfg) {
  detail::check_evaluable(f, signals, cfg);
  if (cfg.sentinel_fill) throw UnsupportedError("gradients are not defined in sentinel-fill mode");
  Recorder num(cfg.mode);
  const auto trace = trace_of(num, f, signals, cfg);
  Gradients g;
  g.value = num.value(trace.front());
  g.d_signal = num.backward(trace.front(), signals);
  return g;
}

}  // namespace stlmask::recurrent
