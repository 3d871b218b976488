#include "stlmask/autodiff.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include "detail/pointwise.hpp"
#include "detail/window.hpp"
#include "stlmask/masking.hpp"
#include "stlmask/smoothing.hpp"

namespace stlmask {
namespace {

// Forward values of one node and its children, plus the pre-order position
// of its smooth interval if it has one.
struct Tape {
  Formula f;
  RobustnessTrace trace;
  std::vector<Tape> kids;
  std::optional<std::size_t> smooth_index;
};

Tape record(const Formula& f, const NamedSignals& signals, const SemanticsConfig& cfg, std::size_t& next_smooth) {
  Tape tape{f, {}, {}, std::nullopt};
  if (f.is_temporal() && std::holds_alternative<SmoothInterval>(f.interval())) tape.smooth_index = next_smooth++;
  for (const auto& child : f.children()) tape.kids.push_back(record(child, signals, cfg, next_smooth));

  switch (f.op()) {
    case Op::True: tape.trace.assign(signals.length(), cfg.rho_max); break;
    case Op::Predicate: tape.trace = detail::predicate_trace(f, signals); break;
    case Op::Not: tape.trace = detail::negated(tape.kids[0].trace); break;
    case Op::And:
    case Op::Or:
      tape.trace = detail::pointwise(tape.kids[0].trace, tape.kids[1].trace, cfg.mode, f.op() == Op::Or);
      break;
    case Op::Eventually: tape.trace = masking::eventually_trace(tape.kids[0].trace, f.interval(), cfg); break;
    case Op::Always: tape.trace = masking::always_trace(tape.kids[0].trace, f.interval(), cfg); break;
    case Op::Until:
      tape.trace = masking::until_trace(tape.kids[0].trace, tape.kids[1].trace, f.interval(), cfg);
      break;
  }
  return tape;
}

class Backward {
 public:
  Backward(const SemanticsConfig& cfg, std::size_t length, Gradients& out) : cfg_(cfg), length_(length), out_(out) {}

  void run(const Tape& tape, const std::vector<double>& adj) {
    switch (tape.f.op()) {
      case Op::True: return;
      case Op::Predicate: {
        auto& d = out_.d_signal.at(tape.f.variable());
        const double sign = detail::predicate_sign(tape.f.comparison());
        for (std::size_t t = 0; t < length_; ++t) d[t] += sign * adj[t];
        return;
      }
      case Op::Not: {
        std::vector<double> child(adj.size());
        for (std::size_t t = 0; t < adj.size(); ++t) child[t] = -adj[t];
        return run(tape.kids[0], child);
      }
      case Op::And:
      case Op::Or: return binary(tape, adj, tape.f.op() == Op::Or);
      case Op::Eventually: return temporal(tape, adj, true);
      case Op::Always: return temporal(tape, adj, false);
      case Op::Until: return until(tape, adj);
    }
  }

 private:
  // Sends g to the child sample behind padded row r.
  void route(std::size_t r, double g, std::vector<double>& child) const {
    if (r < length_) child[r] += g;
    else if (cfg_.padding.kind == PaddingPolicy::Kind::LastValue) child[length_ - 1] += g;
  }

  void binary(const Tape& tape, const std::vector<double>& adj, bool take_max) {
    std::vector<double> left(length_, 0.0);
    std::vector<double> right(length_, 0.0);
    for (std::size_t t = 0; t < length_; ++t) {
      if (adj[t] == 0.0) continue;
      const double pair[2] = {tape.kids[0].trace[t], tape.kids[1].trace[t]};
      double d[2];
      if (take_max) smooth_max_grad(pair, {}, cfg_.mode, d, {});
      else smooth_min_grad(pair, {}, cfg_.mode, d, {});
      left[t] = adj[t] * d[0];
      right[t] = adj[t] * d[1];
    }
    run(tape.kids[0], left);
    run(tape.kids[1], right);
  }

  void temporal(const Tape& tape, const std::vector<double>& adj, bool take_max) {
    const auto& iv = tape.f.interval();
    const auto& inner = tape.kids[0].trace;
    const auto column = detail::padded(inner, detail::pad_length(length_, iv), cfg_.padding);
    const auto* si = std::get_if<SmoothInterval>(&iv);
    std::vector<double> weights;
    std::vector<double> d_weights_total;
    if (si) {
      weights = smooth_mask_weights(*si, length_);
      d_weights_total.assign(length_, 0.0);
    }

    std::vector<double> child(length_, 0.0);
    std::vector<double> dv;
    std::vector<double> dw;
    for (std::size_t t = 0; t < length_; ++t) {
      if (adj[t] == 0.0) continue;
      const auto rows = detail::column_rows(t, length_, iv);
      const std::span<const double> window(column.data() + rows.first, rows.size());
      dv.assign(window.size(), 0.0);
      dw.assign(si ? window.size() : 0, 0.0);
      if (take_max) smooth_max_grad(window, weights, cfg_.mode, dv, dw);
      else smooth_min_grad(window, weights, cfg_.mode, dv, dw);
      for (std::size_t j = 0; j < window.size(); ++j) route(rows.first + j, adj[t] * dv[j], child);
      for (std::size_t j = 0; j < dw.size(); ++j) d_weights_total[j] += adj[t] * dw[j];
    }

    if (si) {
      auto& g = out_.d_interval.at(*tape.smooth_index);
      for (std::size_t j = 0; j < length_; ++j) {
        if (d_weights_total[j] == 0.0) continue;
        const auto mg = smooth_time_mask_grad(static_cast<double>(j), *si, length_);
        g.d_a += d_weights_total[j] * mg.d_a;
        g.d_b += d_weights_total[j] * mg.d_b;
        g.d_c += d_weights_total[j] * mg.d_c;
      }
    }
    run(tape.kids[0], child);
  }

  void until(const Tape& tape, const std::vector<double>& adj) {
    const auto& iv = tape.f.interval();
    const std::size_t pad = detail::pad_length(length_, iv);
    const auto lcol = detail::padded(tape.kids[0].trace, pad, cfg_.padding);
    const auto rcol = detail::padded(tape.kids[1].trace, pad, cfg_.padding);
    std::vector<double> left(length_, 0.0);
    std::vector<double> right(length_, 0.0);

    std::vector<double> s1;
    std::vector<double> s2;
    std::vector<double> d_s1_pair;
    std::vector<double> d_s2;
    std::vector<double> d_prefix;
    for (std::size_t t = 0; t < length_; ++t) {
      if (adj[t] == 0.0) continue;
      const auto steps = detail::until_steps(t, length_, iv);
      const std::size_t k = steps.size();
      s1.resize(k);
      s2.resize(k);
      d_s1_pair.resize(2 * k);
      for (std::size_t n = 0; n < k; ++n) {
        const std::size_t i = steps.first + n;
        s1[n] = smooth_min(std::span<const double>(lcol.data() + t, i + 1), cfg_.mode);
        const double pair[2] = {s1[n], rcol[t + i]};
        s2[n] = smooth_min_grad(pair, {}, cfg_.mode, std::span<double>(d_s1_pair.data() + 2 * n, 2), {});
      }
      d_s2.assign(k, 0.0);
      smooth_max_grad(s2, {}, cfg_.mode, d_s2, {});
      for (std::size_t n = 0; n < k; ++n) {
        const double g = adj[t] * d_s2[n];
        if (g == 0.0) continue;
        const std::size_t i = steps.first + n;
        route(t + i, g * d_s1_pair[2 * n + 1], right);
        const double g_prefix = g * d_s1_pair[2 * n];
        if (g_prefix == 0.0) continue;
        d_prefix.assign(i + 1, 0.0);
        smooth_min_grad(std::span<const double>(lcol.data() + t, i + 1), {}, cfg_.mode, d_prefix, {});
        for (std::size_t tau = 0; tau <= i; ++tau) route(t + tau, g_prefix * d_prefix[tau], left);
      }
    }
    run(tape.kids[0], left);
    run(tape.kids[1], right);
  }

  const SemanticsConfig& cfg_;
  std::size_t length_;
  Gradients& out_;
};

}  // namespace

Gradients value_and_grad(const Formula& f, const NamedSignals& signals, const SemanticsConfig& cfg,
                         std::optional<std::span<const SmoothInterval>> bindings) {
  if (cfg.sentinel_fill) throw UnsupportedError("gradients are not available in sentinel-fill mode");
  const Formula bound = bindings ? with_smooth_intervals(f, *bindings) : f;
  detail::check_evaluable(bound, signals, cfg);

  std::size_t n_smooth = 0;
  const Tape tape = record(bound, signals, cfg, n_smooth);

  Gradients out;
  out.value = tape.trace.front();
  for (const auto& [name, signal] : signals) out.d_signal[name].assign(signal.size(), 0.0);
  out.d_interval.assign(n_smooth, IntervalGradient{});

  std::vector<double> seed(signals.length(), 0.0);
  seed[0] = 1.0;
  Backward(cfg, signals.length(), out).run(tape, seed);
  return out;
}

FdReport finite_diff_check(const std::function<double(std::span<const double>)>& fn,
                           std::span<const double> point, std::span<const double> analytic, FdOptions opts) {
  if (!(opts.h > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  if (analytic.size() != point.size()) throw ShapeError("gradient and point differ in length");
  FdReport report;
  std::vector<double> x(point.begin(), point.end());
  const double f0 = fn(x);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    x[i] = xi + opts.h;
    const double fp = fn(x);
    x[i] = xi - opts.h;
    const double fm = fn(x);
    x[i] = xi;

    const double forward = (fp - f0) / opts.h;
    const double backward = (f0 - fm) / opts.h;
    const double numeric = (fp - fm) / (2.0 * opts.h);
    if (std::abs(forward - backward) > opts.kink_tolerance * std::max(1.0, std::abs(numeric))) {
      report.skipped.push_back(i);
      continue;
    }
    const double err = std::abs(analytic[i] - numeric) / std::max(1.0, std::abs(numeric));
    ++report.checked;
    if (err > report.max_rel_error) {
      report.max_rel_error = err;
      report.worst_index = i;
    }
  }
  return report;
}

FdReport check_robustness_gradient(const Formula& f, const NamedSignals& signals, const SemanticsConfig& cfg,
                                   FdOptions opts) {
  const auto intervals = smooth_intervals(f);
  const std::size_t length = signals.length();

  std::vector<std::string> names;
  std::vector<double> point;
  for (const auto& [name, signal] : signals) {
    names.push_back(name);
    point.insert(point.end(), signal.values().begin(), signal.values().end());
  }
  for (const auto& si : intervals) point.insert(point.end(), {si.a, si.b, si.c});

  const auto grads = value_and_grad(f, signals, cfg);
  std::vector<double> analytic;
  for (const auto& name : names) {
    const auto& d = grads.d_signal.at(name);
    analytic.insert(analytic.end(), d.begin(), d.end());
  }
  for (const auto& g : grads.d_interval) analytic.insert(analytic.end(), {g.d_a, g.d_b, g.d_c});

  const double dt = signals.dt();
  auto fn = [&](std::span<const double> x) {
    std::map<std::string, Signal, std::less<>> channels;
    for (std::size_t c = 0; c < names.size(); ++c) {
      channels.emplace(names[c], Signal(std::vector<double>(x.begin() + static_cast<std::ptrdiff_t>(c * length),
                                                            x.begin() + static_cast<std::ptrdiff_t>((c + 1) * length)),
                                        dt));
    }
    std::vector<SmoothInterval> bound = intervals;
    const std::size_t base = names.size() * length;
    for (std::size_t k = 0; k < bound.size(); ++k) {
      bound[k].a = x[base + 3 * k];
      bound[k].b = x[base + 3 * k + 1];
      bound[k].c = x[base + 3 * k + 2];
    }
    return masking::robustness(with_smooth_intervals(f, bound), NamedSignals(std::move(channels)), cfg);
  };
  return finite_diff_check(fn, point, analytic, opts);
}

}  // namespace stlmask
