#include "stlmask/core.hpp"

#include <cmath>
#include <string>

namespace stlmask {

Signal::Signal(std::vector<double> samples, double dt) : samples_(std::move(samples)), dt_(dt) {
  if (samples_.empty()) throw EmptySignal("signal has no samples");
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw InvalidArgument("signal dt must be positive");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i])) {
      throw NonFiniteSample("sample " + std::to_string(i) + " is not finite");
    }
  }
}

Signal make_signal(std::vector<double> samples, double dt) { return Signal(std::move(samples), dt); }

NamedSignals::NamedSignals(Map channels) : channels_(std::move(channels)) {
  if (channels_.empty()) throw EmptySignal("no signal channels");
  const auto& first = channels_.begin()->second;
  length_ = first.size();
  dt_ = first.dt();
  for (const auto& [name, sig] : channels_) {
    if (name.empty()) throw InvalidArgument("channel name is empty");
    if (sig.size() != length_) {
      throw ShapeError("channel '" + name + "' has length " + std::to_string(sig.size()) +
                       ", expected " + std::to_string(length_));
    }
    if (sig.dt() != dt_) throw ShapeError("channel '" + name + "' has a different dt");
  }
}

bool NamedSignals::contains(std::string_view name) const { return channels_.find(name) != channels_.end(); }

const Signal& NamedSignals::at(std::string_view name) const {
  auto it = channels_.find(name);
  if (it == channels_.end()) throw InvalidArgument("no channel named '" + std::string(name) + "'");
  return it->second;
}

NamedSignals single_channel(std::string name, std::vector<double> samples, double dt) {
  NamedSignals::Map m;
  m.emplace(std::move(name), Signal(std::move(samples), dt));
  return NamedSignals(std::move(m));
}

StepInterval StepInterval::make(std::size_t a, std::size_t b) {
  if (a > b) {
    throw InvalidInterval("interval [" + std::to_string(a) + "," + std::to_string(b) +
                          "] has a > b");
  }
  return {a, b};
}

SmoothInterval SmoothInterval::make(double a, double b, double c, double eps) {
  SmoothInterval si{a, b, c, eps};
  si.validate();
  return si;
}

void SmoothInterval::validate() const {
  if (!(0.0 <= a && a < b && b <= 1.0)) throw InvalidInterval("smooth interval needs 0 <= a < b <= 1");
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidInterval("smooth interval needs c > 0");
  if (!(0.0 <= eps && eps < 0.5)) throw InvalidInterval("smooth interval needs 0 <= eps < 0.5");
}

void SemanticsConfig::validate() const {
  if (mode.kind != Smoothing::Hard && (!(mode.temperature > 0.0) || !std::isfinite(mode.temperature))) {
    throw InvalidArgument("temperature must be positive for smooth reductions");
  }
  if (!(sentinel > 0.0)) throw InvalidArgument("sentinel must be positive");
  if (!(rho_max > 0.0)) throw InvalidArgument("rho_max must be positive");
  if (padding.kind == PaddingPolicy::Kind::Constant && !std::isfinite(padding.value)) {
    throw InvalidArgument("constant padding value must be finite");
  }
}

std::string to_string(Smoothing kind) {
  switch (kind) {
    case Smoothing::Hard: return "hard";
    case Smoothing::SoftMax: return "softmax";
    case Smoothing::LogSumExp: return "lse";
  }
  return "unknown";
}

}  // namespace stlmask
