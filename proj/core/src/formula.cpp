#include "stlmask/formula.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

namespace stlmask {

struct Formula::Node {
  Op op = Op::True;
  std::string variable;
  Comparison cmp = Comparison::Greater;
  double threshold = 0.0;
  Interval interval;
  std::vector<Formula> children;
};

SyntaxError::SyntaxError(const std::string& message, std::size_t line, std::size_t column)
    : Error(message + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
      line_(line),
      column_(column) {}

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
}

bool is_reserved(std::string_view s) { return s == "TRUE" || s == "G" || s == "F" || s == "U"; }

void check_interval(const Interval& iv) {
  if (const auto* step = std::get_if<StepInterval>(&iv)) {
    StepInterval::make(step->a, step->b);
  } else if (const auto* smooth = std::get_if<SmoothInterval>(&iv)) {
    smooth->validate();
  }
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

std::string format_interval(const Interval& iv) {
  if (const auto* step = std::get_if<StepInterval>(&iv)) {
    return "[" + std::to_string(step->a) + "," + std::to_string(step->b) + "]";
  }
  if (const auto* smooth = std::get_if<SmoothInterval>(&iv)) {
    return "{" + format_number(smooth->a) + "," + format_number(smooth->b) + "," +
           format_number(smooth->c) + "," + format_number(smooth->eps) + "}";
  }
  return "";
}

std::size_t temporal_levels(const Formula& f) {
  switch (f.op()) {
    case Op::True:
    case Op::Predicate: return 0;
    case Op::Not: return temporal_levels(f.child());
    case Op::And:
    case Op::Or: return std::max(temporal_levels(f.left()), temporal_levels(f.right()));
    case Op::Eventually:
    case Op::Always: return 1 + temporal_levels(f.child());
    case Op::Until: return 2 + std::max(temporal_levels(f.left()), temporal_levels(f.right()));
  }
  return 0;
}

void collect_variables(const Formula& f, std::set<std::string>& out) {
  if (f.op() == Op::Predicate) out.insert(f.variable());
  for (const auto& c : f.children()) collect_variables(c, out);
}

void collect_smooth(const Formula& f, std::vector<SmoothInterval>& out) {
  if (f.is_temporal()) {
    if (const auto* s = std::get_if<SmoothInterval>(&f.interval())) out.push_back(*s);
  }
  for (const auto& c : f.children()) collect_smooth(c, out);
}

Formula rebuild_smooth(const Formula& f, std::span<const SmoothInterval> repl, std::size_t& next) {
  Interval iv;
  if (f.is_temporal()) {
    iv = f.interval();
    if (std::holds_alternative<SmoothInterval>(iv)) {
      if (next >= repl.size()) throw InvalidArgument("too few replacement smooth intervals");
      iv = repl[next++];
    }
  }
  switch (f.op()) {
    case Op::True:
    case Op::Predicate: return f;
    case Op::Not: return Formula::negation(rebuild_smooth(f.child(), repl, next));
    case Op::And: {
      auto l = rebuild_smooth(f.left(), repl, next);
      return Formula::conjunction(std::move(l), rebuild_smooth(f.right(), repl, next));
    }
    case Op::Or: {
      auto l = rebuild_smooth(f.left(), repl, next);
      return Formula::disjunction(std::move(l), rebuild_smooth(f.right(), repl, next));
    }
    case Op::Eventually: return Formula::eventually(rebuild_smooth(f.child(), repl, next), iv);
    case Op::Always: return Formula::always(rebuild_smooth(f.child(), repl, next), iv);
    case Op::Until: {
      auto l = rebuild_smooth(f.left(), repl, next);
      return Formula::until(std::move(l), rebuild_smooth(f.right(), repl, next), iv);
    }
  }
  return f;
}

}  // namespace

Formula Formula::truth() {
  static const auto node = std::make_shared<const Node>(Node{});
  return Formula(node);
}

Formula Formula::predicate(std::string variable, Comparison cmp, double threshold) {
  if (!is_identifier(variable) || is_reserved(variable)) {
    throw InvalidArgument("'" + variable + "' is not a valid predicate variable");
  }
  if (!std::isfinite(threshold)) throw InvalidArgument("predicate threshold must be finite");
  Node n;
  n.op = Op::Predicate;
  n.variable = std::move(variable);
  n.cmp = cmp;
  n.threshold = threshold;
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::negation(Formula child) {
  Node n;
  n.op = Op::Not;
  n.children = {std::move(child)};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::conjunction(Formula left, Formula right) {
  Node n;
  n.op = Op::And;
  n.children = {std::move(left), std::move(right)};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::disjunction(Formula left, Formula right) {
  Node n;
  n.op = Op::Or;
  n.children = {std::move(left), std::move(right)};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::eventually(Formula child, Interval interval) {
  check_interval(interval);
  Node n;
  n.op = Op::Eventually;
  n.interval = interval;
  n.children = {std::move(child)};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::always(Formula child, Interval interval) {
  check_interval(interval);
  Node n;
  n.op = Op::Always;
  n.interval = interval;
  n.children = {std::move(child)};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::until(Formula left, Formula right, Interval interval) {
  if (std::holds_alternative<SmoothInterval>(interval)) {
    throw UnsupportedError("smooth intervals are supported on Eventually/Always only");
  }
  check_interval(interval);
  Node n;
  n.op = Op::Until;
  n.interval = interval;
  n.children = {std::move(left), std::move(right)};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Op Formula::op() const noexcept { return node_->op; }

const std::string& Formula::variable() const {
  if (op() != Op::Predicate) throw InvalidArgument("not a predicate");
  return node_->variable;
}

Comparison Formula::comparison() const {
  if (op() != Op::Predicate) throw InvalidArgument("not a predicate");
  return node_->cmp;
}

double Formula::threshold() const {
  if (op() != Op::Predicate) throw InvalidArgument("not a predicate");
  return node_->threshold;
}

const Interval& Formula::interval() const {
  if (!is_temporal()) throw InvalidArgument("not a temporal operator");
  return node_->interval;
}

bool Formula::is_temporal() const noexcept {
  return op() == Op::Eventually || op() == Op::Always || op() == Op::Until;
}

const Formula& Formula::child() const {
  if (node_->children.size() != 1) throw InvalidArgument("operator is not unary");
  return node_->children[0];
}

const Formula& Formula::left() const {
  if (node_->children.size() != 2) throw InvalidArgument("operator is not binary");
  return node_->children[0];
}

const Formula& Formula::right() const {
  if (node_->children.size() != 2) throw InvalidArgument("operator is not binary");
  return node_->children[1];
}

std::span<const Formula> Formula::children() const noexcept { return node_->children; }

bool operator==(const Formula& lhs, const Formula& rhs) {
  if (lhs.node_ == rhs.node_) return true;
  const auto& a = *lhs.node_;
  const auto& b = *rhs.node_;
  if (a.op != b.op) return false;
  if (a.op == Op::Predicate) {
    return a.variable == b.variable && a.cmp == b.cmp && a.threshold == b.threshold;
  }
  if (lhs.is_temporal() && a.interval != b.interval) return false;
  return a.children == b.children;
}

std::string to_string(Comparison cmp) {
  switch (cmp) {
    case Comparison::Greater: return ">";
    case Comparison::Less: return "<";
    case Comparison::GreaterEqual: return ">=";
    case Comparison::LessEqual: return "<=";
  }
  return "?";
}

namespace {

std::string wrap(const Formula& f) {
  if (f.op() == Op::True) return "TRUE";
  return "(" + format(f) + ")";
}

}  // namespace

std::string format(const Formula& f) {
  switch (f.op()) {
    case Op::True: return "TRUE";
    case Op::Predicate:
      return f.variable() + " " + to_string(f.comparison()) + " " + format_number(f.threshold());
    case Op::Not: return "~" + wrap(f.child());
    case Op::And: return wrap(f.left()) + " & " + wrap(f.right());
    case Op::Or: return wrap(f.left()) + " | " + wrap(f.right());
    case Op::Eventually: return "F" + format_interval(f.interval()) + " " + wrap(f.child());
    case Op::Always: return "G" + format_interval(f.interval()) + " " + wrap(f.child());
    case Op::Until:
      return wrap(f.left()) + " U" + format_interval(f.interval()) + " " + wrap(f.right());
  }
  return {};
}

std::size_t temporal_depth(const Formula& f) {
  auto levels = temporal_levels(f);
  return levels == 0 ? 0 : levels - 1;
}

std::vector<std::string> variables(const Formula& f) {
  std::set<std::string> out;
  collect_variables(f, out);
  return {out.begin(), out.end()};
}

std::vector<std::string> validate_against(const Formula& f, const NamedSignals& signals) {
  std::vector<std::string> missing;
  for (auto& v : variables(f)) {
    if (!signals.contains(v)) missing.push_back(std::move(v));
  }
  return missing;
}

std::vector<SmoothInterval> smooth_intervals(const Formula& f) {
  std::vector<SmoothInterval> out;
  collect_smooth(f, out);
  return out;
}

Formula with_smooth_intervals(const Formula& f, std::span<const SmoothInterval> replacement) {
  std::size_t next = 0;
  auto out = rebuild_smooth(f, replacement, next);
  if (next != replacement.size()) throw InvalidArgument("too many replacement smooth intervals");
  return out;
}

}  // namespace stlmask
