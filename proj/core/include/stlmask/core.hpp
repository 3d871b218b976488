#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace stlmask {

// Error hierarchy. Everything thrown by the library derives from Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptySignal : public Error {
 public:
  using Error::Error;
};

class NonFiniteSample : public Error {
 public:
  using Error::Error;
};

class InvalidInterval : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class EmptyWindow : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A uniformly sampled real-valued sequence. Immutable once built.
///
/// `dt` is carried for I/O and the application drivers; the semantics
/// only ever index by timestep.
class Signal {
 public:
  Signal(std::vector<double> samples, double dt);

  std::span<const double> values() const noexcept { return samples_; }
  double operator[](std::size_t i) const noexcept { return samples_[i]; }
  std::size_t size() const noexcept { return samples_.size(); }
  double dt() const noexcept { return dt_; }

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  std::vector<double> samples_;
  double dt_;
};

/// Throws EmptySignal, NonFiniteSample, or InvalidArgument (dt <= 0).
Signal make_signal(std::vector<double> samples, double dt);

/// Channels keyed by predicate variable name. All channels share length and dt.
class NamedSignals {
 public:
  using Map = std::map<std::string, Signal, std::less<>>;

  /// Empty set of channels. Only useful for validation queries; every
  /// evaluator rejects it with EmptySignal.
  NamedSignals() = default;
  /// Throws EmptySignal on an empty map, ShapeError on length/dt mismatch.
  explicit NamedSignals(Map channels);

  bool empty() const noexcept { return channels_.empty(); }
  std::size_t length() const noexcept { return length_; }
  double dt() const noexcept { return dt_; }
  std::size_t channel_count() const noexcept { return channels_.size(); }

  bool contains(std::string_view name) const;
  /// Throws InvalidArgument when the channel does not exist.
  const Signal& at(std::string_view name) const;

  Map::const_iterator begin() const noexcept { return channels_.begin(); }
  Map::const_iterator end() const noexcept { return channels_.end(); }

  friend bool operator==(const NamedSignals&, const NamedSignals&) = default;

 private:
  Map channels_;
  std::size_t length_ = 0;
  double dt_ = 0.0;
};

/// Convenience for single-channel inputs.
NamedSignals single_channel(std::string name, std::vector<double> samples, double dt = 1.0);

/// Closed window [a, b] in timesteps.
struct StepInterval {
  std::size_t a = 0;
  std::size_t b = 0;

  /// Throws InvalidInterval when a > b.
  static StepInterval make(std::size_t a, std::size_t b);

  friend bool operator==(const StepInterval&, const StepInterval&) = default;
};

/// Number of timesteps in the window, b - a + 1.
constexpr std::size_t window_size(const StepInterval& iv) noexcept { return iv.b - iv.a + 1; }

/// Differentiable window expressed as fractions of the signal length.
///
/// `c` sets the sharpness of the sigmoid edges; `eps` is subtracted from the
/// mask before clamping at zero.
struct SmoothInterval {
  double a = 0.0;
  double b = 1.0;
  double c = 10.0;
  double eps = 0.0;

  /// Throws InvalidInterval unless 0 <= a < b <= 1, c > 0, 0 <= eps < 0.5.
  static SmoothInterval make(double a, double b, double c, double eps = 0.0);
  void validate() const;

  friend bool operator==(const SmoothInterval&, const SmoothInterval&) = default;
};

/// Virtual samples used when a window runs past the last sample.
struct PaddingPolicy {
  enum class Kind { LastValue, Constant };

  Kind kind = Kind::LastValue;
  double value = 0.0;

  static PaddingPolicy last_value() noexcept { return {Kind::LastValue, 0.0}; }
  static PaddingPolicy constant(double v) noexcept { return {Kind::Constant, v}; }

  friend bool operator==(const PaddingPolicy&, const PaddingPolicy&) = default;
};

enum class Smoothing { Hard, SoftMax, LogSumExp };

/// How max/min reductions are computed.
struct ReduceMode {
  Smoothing kind = Smoothing::Hard;
  double temperature = 1.0;

  static ReduceMode hard() noexcept { return {Smoothing::Hard, 1.0}; }
  static ReduceMode softmax(double tau) noexcept { return {Smoothing::SoftMax, tau}; }
  static ReduceMode logsumexp(double tau) noexcept { return {Smoothing::LogSumExp, tau}; }

  friend bool operator==(const ReduceMode&, const ReduceMode&) = default;
};

struct SemanticsConfig {
  ReduceMode mode;
  PaddingPolicy padding;
  /// Fill magnitude for masked-out entries when sentinel_fill is on.
  double sentinel = 1e5;
  /// Robustness of TRUE.
  double rho_max = 1e5;
  /// Reduce whole columns with masked entries replaced by -/+sentinel
  /// instead of reducing over kept entries only.
  bool sentinel_fill = false;

  /// Throws InvalidArgument on a non-positive temperature, sentinel or rho_max,
  /// or a non-finite constant padding value.
  void validate() const;
};

/// Per-timestep robustness; entry t is the robustness of the suffix starting at t.
using RobustnessTrace = std::vector<double>;

std::string to_string(Smoothing kind);

}  // namespace stlmask
