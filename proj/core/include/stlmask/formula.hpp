#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stlmask/core.hpp"

namespace stlmask {

enum class Op { True, Predicate, Not, And, Or, Eventually, Always, Until };

/// `>=` and `<=` behave exactly like `>` and `<`; the distinction has measure
/// zero on the reals. `x < c` has robustness c - x and is false when x == c.
enum class Comparison { Greater, Less, GreaterEqual, LessEqual };

/// Time bound of a temporal operator. monostate means the whole remaining signal.
using Interval = std::variant<std::monostate, StepInterval, SmoothInterval>;

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Immutable STL formula. Copies share structure.
class Formula {
 public:
  static Formula truth();
  static Formula predicate(std::string variable, Comparison cmp, double threshold);
  static Formula negation(Formula child);
  static Formula conjunction(Formula left, Formula right);
  static Formula disjunction(Formula left, Formula right);
  static Formula eventually(Formula child, Interval interval = {});
  static Formula always(Formula child, Interval interval = {});
  static Formula until(Formula left, Formula right, Interval interval = {});

  Op op() const noexcept;

  // Predicate accessors.
  const std::string& variable() const;
  Comparison comparison() const;
  double threshold() const;

  // Temporal accessors.
  const Interval& interval() const;
  bool is_temporal() const noexcept;

  /// Operand of Not/Eventually/Always.
  const Formula& child() const;
  /// Operands of And/Or/Until.
  const Formula& left() const;
  const Formula& right() const;
  std::span<const Formula> children() const noexcept;

  /// Identity of the underlying node; stable across copies.
  const void* id() const noexcept { return node_.get(); }

  /// Structural equality.
  friend bool operator==(const Formula& lhs, const Formula& rhs);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Formula parse(std::string_view text);
std::string format(const Formula& f);

/// Nesting depth of temporal operators minus one (clamped at zero). Until
/// counts as two levels since its semantics nests a prefix minimum inside the
/// outer maximum, so `G (p & q)` is 0, `F G (p & q)` is 1 and `p U q` is 1.
std::size_t temporal_depth(const Formula& f);

/// Sorted, de-duplicated predicate variable names.
std::vector<std::string> variables(const Formula& f);

/// Variables of `f` with no channel in `signals`; empty means the formula is usable.
std::vector<std::string> validate_against(const Formula& f, const NamedSignals& signals);

/// Smooth intervals in pre-order.
std::vector<SmoothInterval> smooth_intervals(const Formula& f);

/// Copy of `f` with its smooth intervals replaced in pre-order.
/// Throws InvalidArgument when the count differs.
Formula with_smooth_intervals(const Formula& f, std::span<const SmoothInterval> replacement);

std::string to_string(Comparison cmp);

}  // namespace stlmask
