#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

#include "stlmask/core.hpp"
#include "stlmask/mining.hpp"
#include "stlmask/planning.hpp"

namespace stlmask {

/// Malformed CSV or config input; the message names the line.
class ParseError : public Error {
 public:
  using Error::Error;
};

// CSV signals: a header row of identifiers, then one row per timestep. A
// column named `t` supplies dt (from its first two rows) and is not a channel.

NamedSignals read_csv(std::istream& in);
NamedSignals read_csv_file(const std::filesystem::path& path);

/// Writes every channel with shortest round-trip formatting, so reading the
/// output back yields bit-identical samples. `with_time` adds a `t` column.
void write_csv(std::ostream& out, const NamedSignals& signals, bool with_time = false);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);
/// Throws ParseError unless the whole of `text` is a finite number.
double parse_double(std::string_view text);

/// `key = value` lines; `#` starts a comment. Duplicate keys are an error.
using KeyValues = std::map<std::string, std::string, std::less<>>;
KeyValues parse_key_values(std::istream& in);
KeyValues read_key_values_file(const std::filesystem::path& path);

// Config keys mirror the struct fields. Schedules are written as
// `kind start end steps`, boxes as `x_lo x_hi y_lo y_hi`, points as `x y`.
// Unknown keys and malformed values throw ParseError; values are then checked
// by the struct's validate().

PlannerConfig planner_config_from(const KeyValues& kv, PlannerConfig base = {});
MiningConfig mining_config_from(const KeyValues& kv, MiningConfig base = {});

}  // namespace stlmask
