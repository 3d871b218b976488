#include "cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "bench.hpp"
#include "json.hpp"
#include "stlmask/stlmask.hpp"

namespace stlmask::cli {
namespace {

using json = nlohmann::json;

struct Globals {
  std::string mode = "hard";
  double temperature = 1.0;
  std::string padding = "last";
  std::string engine = "masking";
  std::uint64_t seed = 0;
  std::string out;
};

ReduceMode parse_mode(const Globals& g) {
  if (g.mode == "hard") return ReduceMode::hard();
  if (g.mode == "softmax") return ReduceMode::softmax(g.temperature);
  if (g.mode == "lse") return ReduceMode::logsumexp(g.temperature);
  throw InvalidArgument("unknown mode '" + g.mode + "' (hard, softmax, lse)");
}

PaddingPolicy parse_padding(const std::string& text) {
  if (text == "last") return PaddingPolicy::last_value();
  if (text.rfind("const:", 0) == 0) return PaddingPolicy::constant(parse_double(std::string_view(text).substr(6)));
  throw InvalidArgument("unknown padding '" + text + "' (last, const:<v>)");
}

SemanticsConfig semantics(const Globals& g) {
  SemanticsConfig cfg;
  cfg.mode = parse_mode(g);
  cfg.padding = parse_padding(g.padding);
  cfg.validate();
  return cfg;
}

RobustnessTrace trace_with(const std::string& engine, const Formula& f, const NamedSignals& s,
                           const SemanticsConfig& cfg) {
  if (engine == "masking") return masking::robustness_trace(f, s, cfg);
  if (engine == "recurrent") return recurrent::trace_recurrent(f, s, cfg);
  if (engine == "reference") return reference::trace_ref(f, s, cfg);
  throw InvalidArgument("unknown engine '" + engine + "' (masking, recurrent, reference)");
}

void emit(const json& j, const Globals& g, std::ostream& out) {
  if (g.out.empty()) {
    out << j.dump(2) << '\n';
    return;
  }
  std::ofstream file(g.out);
  if (!file) throw InvalidArgument("cannot write " + g.out);
  file << j.dump(2) << '\n';
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream file(path);
  if (!file) throw InvalidArgument("cannot write " + path);
  body(file);
}

json bench_json(const BenchReport& r) {
  json timings = json::array();
  for (const auto& t : r.timings) {
    timings.push_back({{"formula", t.formula},
                       {"engine", t.engine},
                       {"kind", t.kind},
                       {"length", t.length},
                       {"batch", r.options.batch},
                       {"median_ms", t.median_ms},
                       {"iqr_ms", t.iqr_ms},
                       {"reps", t.reps}});
  }
  json relative = json::array();
  for (const auto& bf : bench_formulas()) {
    for (auto n : r.options.sizes) {
      for (const char* kind : {"value", "gradient"}) {
        if (!r.options.gradients && std::string(kind) == "gradient") continue;
        relative.push_back({{"formula", bf.name}, {"length", n}, {"kind", kind}, {"relative", r.relative(bf.name, n, kind)}});
      }
    }
  }
  json formulas = json::array();
  for (const auto& bf : bench_formulas()) {
    formulas.push_back({{"name", bf.name}, {"description", bf.description}, {"formula", format(bf.formula)}});
  }
  return {{"formulas", formulas}, {"timings", timings}, {"relative", relative}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Signal temporal logic robustness with masking and recurrent engines", "stlmask"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--mode", g.mode, "Reduction: hard, softmax or lse")->capture_default_str();
  app.add_option("--temp", g.temperature, "Temperature for softmax and lse")->capture_default_str();
  app.add_option("--padding", g.padding, "Padding past the signal end: last or const:<v>")->capture_default_str();
  app.add_option("--engine", g.engine, "masking, recurrent or reference")->capture_default_str();
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--out", g.out, "Write JSON here instead of stdout");

  std::string formula_text;
  std::string csv_path;
  auto* eval = app.add_subcommand("eval", "Robustness at t = 0 of a formula over a CSV signal")->fallthrough();
  eval->add_option("formula", formula_text)->required();
  eval->add_option("csv", csv_path)->required();
  auto* trace = app.add_subcommand("trace", "Full robustness trace")->fallthrough();
  trace->add_option("formula", formula_text)->required();
  trace->add_option("csv", csv_path)->required();

  BenchOptions bench_opt;
  bool no_grad = false;
  auto* bench = app.add_subcommand("bench", "Time masking against recurrent on phi1..phi6")->fallthrough();
  bench->add_option("--sizes", bench_opt.sizes, "Signal lengths")->delimiter(',')->capture_default_str();
  bench->add_option("--reps", bench_opt.reps, "Timed repetitions (>= 10)")->capture_default_str();
  bench->add_option("--warmup", bench_opt.warmup, "Untimed repetitions")->capture_default_str();
  bench->add_option("--batch", bench_opt.batch, "Signals per repetition")->capture_default_str();
  bench->add_flag("--no-grad", no_grad, "Skip gradient timings");

  std::string config_path;
  std::string data_path;
  std::optional<std::uint64_t> generate;
  std::size_t contour = 0;
  std::string contour_out;
  auto* mine = app.add_subcommand("mine", "Mine the interval of G (s > 0) from data")->fallthrough();
  auto* data_opt = mine->add_option("--data", data_path, "CSV with one signal per column");
  mine->add_option("--generate", generate, "Use the synthetic dataset drawn from this seed")->excludes(data_opt);
  mine->add_option("--config", config_path, "key = value overrides of the mining config");
  mine->add_option("--contour", contour, "Also evaluate an N x N grid over (a, b)");
  mine->add_option("--contour-out", contour_out, "CSV path for the grid (a,b,loss)");

  std::string states_path;
  auto* plan = app.add_subcommand("plan", "Plan a trajectory with a learned time interval")->fallthrough();
  plan->add_option("--config", config_path, "key = value overrides of the planner config");
  plan->add_option("--states", states_path, "Write the state sequence as CSV (t,x,y)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "stlmask: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*eval || *trace) {
      const auto cfg = semantics(g);
      const auto f = parse(formula_text);
      const auto signals = read_csv_file(csv_path);
      const auto values = trace_with(g.engine, f, signals, cfg);
      if (*trace) {
        emit(json(values), g, out);
      } else {
        emit({{"value", values.front()}, {"engine", g.engine}, {"mode", g.mode}, {"L", signals.length()}}, g, out);
      }
    } else if (*bench) {
      bench_opt.mode = parse_mode(g);
      bench_opt.seed = g.seed;
      bench_opt.gradients = !no_grad;
      if (g.mode != "hard") bench_opt.grad_temperature = g.temperature;
      emit(bench_json(run_bench(bench_opt)), g, out);
    } else if (*mine) {
      MiningConfig cfg;
      if (!config_path.empty()) cfg = mining_config_from(read_key_values_file(config_path));
      if (contour != 0 && contour_out.empty()) throw InvalidArgument("--contour needs --contour-out");
      if (contour == 1) throw InvalidArgument("--contour needs at least 2 points per axis");
      std::vector<Signal> data;
      json source;
      if (!data_path.empty()) {
        for (const auto& [name, sig] : read_csv_file(data_path)) data.push_back(sig);
        source = {{"data", data_path}};
      } else {
        const auto seed = generate.value_or(g.seed);
        data = generate_dataset(DatasetConfig{}, seed);
        source = {{"generate", seed}};
      }
      const auto res = mine_interval(data, cfg);
      json j{{"a", res.a},
             {"b", res.b},
             {"loss", res.loss_history.back()},
             {"steps", cfg.steps},
             {"signals", data.size()},
             {"source", source}};
      if (contour != 0) {
        const auto axis = linspace(0.0, 1.0, contour);
        const auto mode = ReduceMode{cfg.mode, cfg.tau.end};
        const auto grid = grid_eval(axis, axis, [&](double a, double b) {
          return mining_objective(a, b, data, cfg.gamma, cfg.c.end, cfg.eps, mode);
        });
        write_file(contour_out, [&](std::ostream& os) {
          os << "a,b,loss\n";
          for (std::size_t i = 0; i < axis.size(); ++i) {
            for (std::size_t k = 0; k < axis.size(); ++k) {
              if (const auto v = grid.at(i, k)) {
                os << format_double(axis[i]) << ',' << format_double(axis[k]) << ',' << format_double(*v) << '\n';
              }
            }
          }
        });
        j["contour"] = {{"path", contour_out}, {"rows", grid.valid_cells()}};
      }
      emit(j, g, out);
    } else if (*plan) {
      PlannerConfig cfg;
      if (!config_path.empty()) cfg = planner_config_from(read_key_values_file(config_path));
      const auto res = plan_trajectory(cfg, g.seed);
      if (!states_path.empty()) {
        write_file(states_path, [&](std::ostream& os) { write_csv(os, trajectory_signals(res.states, cfg.dt), true); });
      }
      emit({{"seed", g.seed},
            {"a", res.a},
            {"b", res.b},
            {"interval", {res.discrete.a, res.discrete.b}},
            {"rho_smooth", res.rho_smooth},
            {"rho_hard", res.rho_hard},
            {"objective", res.history.back()},
            {"controls", res.controls},
            {"states", res.states}},
           g, out);
    }
  } catch (const DivergedError& e) {
    err << "stlmask: diverged: " << e.what() << '\n';
    return kDiverged;
  } catch (const Error& e) {
    err << "stlmask: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

}  // namespace stlmask::cli
