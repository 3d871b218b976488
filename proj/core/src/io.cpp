#include "stlmask/io.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace stlmask {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char ch : s) {
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
  }
  return true;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

double parse_double(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ParseError("not a finite number: '" + std::string(text) + "'");
  }
  return v;
}

NamedSignals read_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    for (auto name : split(line, ',')) {
      if (!is_identifier(name)) {
        throw ParseError("line " + std::to_string(lineno) + ": bad column name '" + std::string(name) + "'");
      }
      for (const auto& seen : header) {
        if (seen == name) throw ParseError("line " + std::to_string(lineno) + ": duplicate column '" + seen + "'");
      }
      header.emplace_back(name);
    }
    break;
  }
  if (header.empty()) throw ParseError("CSV has no header row");

  std::vector<std::vector<double>> columns(header.size());
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) {
      throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(header.size()) +
                       " fields, got " + std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      try {
        columns[c].push_back(parse_double(cells[c]));
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
      }
    }
  }
  if (columns.front().empty()) throw EmptySignal("CSV has no data rows");

  double dt = 1.0;
  NamedSignals::Map channels;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "t") {
      if (columns[c].size() >= 2) dt = columns[c][1] - columns[c][0];
      if (!(dt > 0.0)) throw ParseError("column t must increase");
    }
  }
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] != "t") channels.emplace(header[c], make_signal(std::move(columns[c]), dt));
  }
  if (channels.empty()) throw ParseError("CSV has no signal columns");
  return NamedSignals(std::move(channels));
}

NamedSignals read_csv_file(const std::filesystem::path& path) {
  auto in = open(path);
  return read_csv(in);
}

void write_csv(std::ostream& out, const NamedSignals& signals, bool with_time) {
  bool first = true;
  if (with_time) {
    out << "t";
    first = false;
  }
  for (const auto& [name, signal] : signals) {
    out << (first ? "" : ",") << name;
    first = false;
  }
  out << '\n';
  for (std::size_t i = 0; i < signals.length(); ++i) {
    first = true;
    if (with_time) {
      out << format_double(static_cast<double>(i) * signals.dt());
      first = false;
    }
    for (const auto& [name, signal] : signals) {
      out << (first ? "" : ",") << format_double(signal[i]);
      first = false;
    }
    out << '\n';
  }
}

KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
    const auto key = trim(view.substr(0, eq));
    const auto value = trim(view.substr(eq + 1));
    if (key.empty() || value.empty()) throw ParseError("line " + std::to_string(lineno) + ": empty key or value");
    if (!kv.emplace(std::string(key), std::string(value)).second) {
      throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" + std::string(key) + "'");
    }
  }
  return kv;
}

KeyValues read_key_values_file(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_key_values(in);
}

namespace {

std::vector<double> numbers(std::string_view key, std::string_view value, std::size_t count) {
  const auto parts = words(value);
  if (parts.size() != count) {
    throw ParseError(std::string(key) + ": expected " + std::to_string(count) + " number(s)");
  }
  std::vector<double> out;
  for (auto p : parts) out.push_back(parse_double(p));
  return out;
}

double number(std::string_view key, std::string_view value) { return numbers(key, value, 1)[0]; }

std::size_t count_of(std::string_view key, std::string_view value) {
  const double v = number(key, value);
  if (v < 0.0 || v != std::floor(v)) throw ParseError(std::string(key) + ": expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

AnnealSchedule schedule(std::string_view key, std::string_view value) {
  const auto parts = words(value);
  if (parts.size() != 4) throw ParseError(std::string(key) + ": expected 'kind start end steps'");
  AnnealSchedule s;
  if (parts[0] == "constant") s.kind = AnnealSchedule::Kind::Constant;
  else if (parts[0] == "linear") s.kind = AnnealSchedule::Kind::Linear;
  else if (parts[0] == "sigmoid") s.kind = AnnealSchedule::Kind::Sigmoid;
  else throw ParseError(std::string(key) + ": unknown schedule kind '" + std::string(parts[0]) + "'");
  s.start = parse_double(parts[1]);
  s.end = parse_double(parts[2]);
  s.total_steps = count_of(key, parts[3]);
  return s;
}

Box box(std::string_view key, std::string_view value) {
  const auto v = numbers(key, value, 4);
  return {v[0], v[1], v[2], v[3]};
}

template <typename Cfg>
using Setter = std::function<void(Cfg&, std::string_view key, std::string_view value)>;

template <typename Cfg>
Cfg apply(const KeyValues& kv, Cfg cfg, const std::map<std::string, Setter<Cfg>, std::less<>>& setters) {
  for (const auto& [key, value] : kv) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw ParseError("unknown config key '" + key + "'");
    it->second(cfg, key, value);
  }
  cfg.validate();
  return cfg;
}

}  // namespace

PlannerConfig planner_config_from(const KeyValues& kv, PlannerConfig base) {
  using C = PlannerConfig;
  const std::map<std::string, Setter<C>, std::less<>> setters{
      {"gamma1", [](C& c, auto k, auto v) { c.gamma1 = number(k, v); }},
      {"gamma2", [](C& c, auto k, auto v) { c.gamma2 = number(k, v); }},
      {"gamma3", [](C& c, auto k, auto v) { c.gamma3 = number(k, v); }},
      {"gamma4", [](C& c, auto k, auto v) { c.gamma4 = number(k, v); }},
      {"nominal_size", [](C& c, auto k, auto v) { c.nominal_size = number(k, v); }},
      {"u_max", [](C& c, auto k, auto v) { c.u_max = number(k, v); }},
      {"dt", [](C& c, auto k, auto v) { c.dt = number(k, v); }},
      {"horizon", [](C& c, auto k, auto v) { c.horizon = count_of(k, v); }},
      {"target", [](C& c, auto k, auto v) { c.target = box(k, v); }},
      {"goal", [](C& c, auto k, auto v) { c.goal = box(k, v); }},
      {"x0", [](C& c, auto k, auto v) {
         const auto p = numbers(k, v, 2);
         c.x0 = {p[0], p[1]};
       }},
      {"a_init", [](C& c, auto k, auto v) { c.a_init = number(k, v); }},
      {"b_init", [](C& c, auto k, auto v) { c.b_init = number(k, v); }},
      {"init_scale", [](C& c, auto k, auto v) { c.init_scale = number(k, v); }},
      {"learning_rate", [](C& c, auto k, auto v) { c.learning_rate = number(k, v); }},
      {"steps", [](C& c, auto k, auto v) { c.steps = count_of(k, v); }},
      {"tau", [](C& c, auto k, auto v) { c.tau = schedule(k, v); }},
      {"c", [](C& c, auto k, auto v) { c.c = schedule(k, v); }},
      {"eps", [](C& c, auto k, auto v) { c.eps = number(k, v); }},
  };
  return apply(kv, std::move(base), setters);
}

MiningConfig mining_config_from(const KeyValues& kv, MiningConfig base) {
  using C = MiningConfig;
  const std::map<std::string, Setter<C>, std::less<>> setters{
      {"gamma", [](C& c, auto k, auto v) { c.gamma = number(k, v); }},
      {"learning_rate", [](C& c, auto k, auto v) { c.learning_rate = number(k, v); }},
      {"steps", [](C& c, auto k, auto v) { c.steps = count_of(k, v); }},
      {"c", [](C& c, auto k, auto v) { c.c = schedule(k, v); }},
      {"tau", [](C& c, auto k, auto v) { c.tau = schedule(k, v); }},
      {"mode", [](C& c, auto k, auto v) {
         if (v == "lse") c.mode = Smoothing::LogSumExp;
         else if (v == "softmax") c.mode = Smoothing::SoftMax;
         else if (v == "hard") c.mode = Smoothing::Hard;
         else throw ParseError(std::string(k) + ": expected hard, softmax or lse");
       }},
      {"a_init", [](C& c, auto k, auto v) { c.a_init = number(k, v); }},
      {"b_init", [](C& c, auto k, auto v) { c.b_init = number(k, v); }},
      {"eps", [](C& c, auto k, auto v) { c.eps = number(k, v); }},
  };
  return apply(kv, std::move(base), setters);
}

}  // namespace stlmask
