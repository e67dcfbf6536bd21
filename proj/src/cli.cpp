#include "maxstable/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "maxstable/analysis.hpp"
#include "maxstable/battery.hpp"
#include "maxstable/conditional.hpp"
#include "maxstable/continuous.hpp"
#include "maxstable/io.hpp"
#include "maxstable/maxar.hpp"

namespace maxstable {

namespace {

/// Usage errors detected after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Csv, Json };

struct RunConfig {
  double a = 0.5;
  std::string direction = "forward";
  std::size_t n = 1000;
  std::int64_t t0 = 0;
  double window = 10.0;
  std::optional<double> epsilon;
  std::optional<std::uint64_t> seed;
  std::string output_path;
  std::string input_path;
  std::string format;
  double x = 1.0, y = 1.0;
  double rel_tol = 1e-9;
  std::size_t mc = 0;
  bool continuous = false;
  bool corrupt = false;
};

CLI::Validator unit_interval(const std::string& name) {
  return CLI::Validator(
      [name](std::string& input) -> std::string {
        double v = 0.0;
        if (!CLI::detail::lexical_cast(input, v) || !(v >= 0.0 && v <= 1.0)) {
          return name + " must lie in [0,1], got " + input;
        }
        return {};
      },
      "in [0,1]");
}

CLI::Validator positive(const std::string& name) {
  return CLI::Validator(
      [name](std::string& input) -> std::string {
        double v = 0.0;
        if (!CLI::detail::lexical_cast(input, v) || !(v > 0.0) || !std::isfinite(v)) {
          return name + " must be a finite number > 0, got " + input;
        }
        return {};
      },
      "> 0");
}

std::uint64_t resolve_seed(const RunConfig& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("MAXSTAB_SEED")) {
    std::uint64_t s = 0;
    if (!CLI::detail::lexical_cast(std::string(env), s)) {
      throw UsageError("MAXSTAB_SEED must be an unsigned 64-bit integer, got '" +
                       std::string(env) + "'");
    }
    return s;
  }
  return 0;
}

Format resolve_format(const RunConfig& c, Format fallback) {
  if (c.format == "csv") return Format::Csv;
  if (c.format == "json") return Format::Json;
  const auto& p = c.output_path;
  if (p.size() >= 5 && p.compare(p.size() - 5, 5, ".json") == 0) return Format::Json;
  if (p.size() >= 4 && p.compare(p.size() - 4, 4, ".csv") == 0) return Format::Csv;
  return fallback;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << contents;
  if (!file.flush()) throw IoError("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

bool to_stdout(const RunConfig& c) { return c.output_path.empty() || c.output_path == "-"; }

void emit(const RunConfig& c, const std::string& contents, std::ostream& out) {
  if (to_stdout(c)) {
    out << contents;
  } else {
    write_file(c.output_path, contents);
  }
}

nlohmann::json discrete_to_json(const DiscretePath& p) {
  return {{"start_index", p.start_index},
          {"values", p.values},
          {"a", p.params.a()},
          {"direction", std::string(to_string(p.params.direction()))},
          {"seed", p.seed},
          {"stream", p.stream}};
}

std::string render(const DiscretePath& p, Format f) {
  if (f == Format::Json) return discrete_to_json(p).dump(2) + "\n";
  std::ostringstream s;
  write_discrete_csv(s, p);
  return s.str();
}

int cmd_simulate_discrete(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::ostream& log = to_stdout(c) ? err : out;
  const auto direction = parse_direction(c.direction);
  if (direction == Direction::Reversed && !(c.a > 0.0 && c.a < 1.0)) {
    log << "note: a=" << c.a << " is reversible; simulating the forward process\n";
  }
  const MaxARParams params(c.a, direction);
  const auto seed = resolve_seed(c);
  RngState rng(seed);
  const auto path = simulate(params, c.t0, c.n, rng);
  emit(c, render(path, resolve_format(c, Format::Csv)), out);
  log << "simulate-discrete n=" << c.n << " a=" << format_double(params.a())
      << " direction=" << to_string(params.direction()) << " seed=" << seed << "\n";
  return kExitOk;
}

int cmd_simulate_continuous(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::ostream& log = to_stdout(c) ? err : out;
  const auto direction = parse_direction(c.direction);
  if (!(c.a > 0.0)) throw UsageError("--a must lie in (0,1] for the continuous process");
  const auto seed = resolve_seed(c);
  RngState rng(seed);
  const bool reversed = direction == Direction::Reversed && c.a < 1.0;
  const auto path = reversed ? simulate_za_reversed(c.a, c.window, rng)
                             : simulate_za(c.a, c.window, rng);
  std::string contents;
  if (c.epsilon) {
    if (!(*c.epsilon <= c.window)) throw UsageError("--epsilon must not exceed --window");
    contents = render(sample_grid(path, *c.epsilon), resolve_format(c, Format::Csv));
  } else if (resolve_format(c, Format::Json) == Format::Json) {
    contents = cadlag_to_json(path).dump(2) + "\n";
  } else {
    std::ostringstream s;
    write_cadlag_csv(s, path);
    contents = s.str();
  }
  emit(c, contents, out);
  log << "simulate-continuous window=" << format_double(c.window) << " a=" << format_double(c.a)
      << " direction=" << to_string(path.direction) << " events=" << path.events.size()
      << " seed=" << seed << "\n";
  return kExitOk;
}

int cmd_kernel(const RunConfig& c, std::ostream& out) {
  const MaxARParams params(c.a, parse_direction(c.direction));
  if (params.direction() == Direction::Reversed && params.a() == 0.0) {
    throw UsageError("reversed kernel needs a in (0,1)");
  }
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.15g", kernel_cdf(params, c.x, c.y));
  out << buffer << "\n";
  return kExitOk;
}

// Parses {"conditioning": [t, z], "targets": [[t1, z1], ...], "a": a, "tol": tol}.
struct ParsedQuery {
  ConditionalQuery query;
  double a = 0.0;
  double tol = 1e-10;
};

ExceedancePoint parse_point(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw UsageError(where + ": expected [t, z]");
  if (!j[0].is_number_integer()) throw UsageError(where + "/0: expected an integer index");
  if (!j[1].is_number() || !(j[1].get<double>() > 0.0)) {
    throw UsageError(where + "/1: expected a positive number");
  }
  return {j[0].get<std::int64_t>(), j[1].get<double>()};
}

ParsedQuery parse_query(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("query: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("query: expected a JSON object");
  ParsedQuery p;
  if (!j.contains("conditioning")) throw UsageError("/conditioning: missing");
  p.query.conditioning = parse_point(j["conditioning"], "/conditioning");
  if (!j.contains("targets") || !j["targets"].is_array() || j["targets"].empty()) {
    throw UsageError("/targets: expected a nonempty array of [t, z]");
  }
  for (std::size_t i = 0; i < j["targets"].size(); ++i) {
    p.query.targets.push_back(parse_point(j["targets"][i], "/targets/" + std::to_string(i)));
  }
  if (!j.contains("a") || !j["a"].is_number() || !(j["a"].get<double>() >= 0.0) ||
      !(j["a"].get<double>() <= 1.0)) {
    throw UsageError("/a: expected a number in [0,1]");
  }
  p.a = j["a"].get<double>();
  if (j.contains("tol")) {
    if (!j["tol"].is_number() || !(j["tol"].get<double>() > 0.0) ||
        !(j["tol"].get<double>() <= 1e-4)) {
      throw UsageError("/tol: expected a number in (0, 1e-4]");
    }
    p.tol = j["tol"].get<double>();
  }
  try {
    p.query.validate();
  } catch (const std::domain_error& e) {
    throw UsageError(std::string("/targets: ") + e.what());
  }
  return p;
}

int cmd_conditional(const RunConfig& c, std::ostream& out) {
  const auto parsed = parse_query(read_file(c.input_path));
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.15g",
                conditional_cdf(parsed.query, parsed.a, parsed.tol));
  out << buffer << "\n";
  if (c.mc > 0) {
    if (c.mc < 1000) throw UsageError("--mc needs at least 1000 draws");
    RngState rng(resolve_seed(c));
    const auto est = conditional_cdf_mc(parsed.query, parsed.a, c.mc, rng);
    std::snprintf(buffer, sizeof buffer, "mc %.15g +- %.6g", est.estimate, est.standard_error);
    out << buffer << "\n";
  }
  return kExitOk;
}

int cmd_identify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::istringstream in(read_file(c.input_path));
  WindowedPath path;
  try {
    path = read_discrete_csv(in);
  } catch (const std::invalid_argument& e) {
    throw UsageError(c.input_path + ": " + e.what());
  }
  try {
    const auto result = identify(path.values, IdentifyOptions{.rel_tol = c.rel_tol});
    out << result.to_json().dump(2) << "\n";
    return kExitOk;
  } catch (const IdentificationError& e) {
    err << e.what() << "\n" << e.diagnostics().dump(2) << "\n";
    return kExitUnclassifiable;
  }
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const auto direction = parse_direction(c.direction);
  const auto seed = resolve_seed(c);
  RngState rng(seed);
  ProcessSpec spec;
  if (c.continuous) {
    if (!(c.a > 0.0)) throw UsageError("--a must lie in (0,1] for the continuous process");
    spec = ContinuousProcessSpec{c.a, direction, c.epsilon.value_or(0.1)};
  } else {
    spec = DiscreteProcessSpec{MaxARParams(c.a, direction)};
  }
  BatteryOptions options;
  options.corrupt_simulator = c.corrupt;
  const auto report = run_battery(spec, rng, options);
  const std::string json = report.to_json().dump(2) + "\n";
  if (c.output_path.empty()) {
    out << json;
  } else {
    write_file(c.output_path, json);
  }
  std::size_t failed = 0;
  for (const auto& check : report.checks()) {
    if (!check.pass) {
      ++failed;
      out << "FAIL " << check.name << " value=" << format_double(check.value)
          << " threshold=" << format_double(check.threshold) << "\n";
    }
  }
  out << "verify: " << report.checks().size() - failed << "/" << report.checks().size()
      << " checks passed, seed=" << seed << "\n";
  return failed == 0 ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation and verification of stationary max-stable Markov processes",
               "maxstable"};
  app.require_subcommand(1);
  RunConfig c;

  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "RNG seed (fallback: $MAXSTAB_SEED, then 0)");
  };
  auto add_a = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--a", c.a, "dependence parameter a")->check(unit_interval("a"));
    if (required) opt->required();
  };
  auto add_direction = [&](CLI::App* sub) {
    sub->add_option("--direction", c.direction, "forward or reversed")
        ->check(CLI::IsMember({"forward", "reversed"}));
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", c.output_path, "output file (default: standard output)");
    sub->add_option("--format", c.format, "csv or json (default: from --out extension)")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* sim_d = app.add_subcommand("simulate-discrete", "simulate a max-AR(1) path");
  add_a(sim_d, true);
  add_direction(sim_d);
  sim_d->add_option("--n", c.n, "path length")->required()->check(CLI::PositiveNumber);
  sim_d->add_option("--t0", c.t0, "first index");
  add_seed(sim_d);
  add_output(sim_d);

  auto* sim_c = app.add_subcommand("simulate-continuous", "simulate the moving-maximum process");
  add_a(sim_c, true);
  add_direction(sim_c);
  sim_c->add_option("--window", c.window, "window length M")->required()->check(positive("window"));
  sim_c->add_option("--epsilon", c.epsilon, "write the epsilon-grid skeleton instead")
      ->check(positive("epsilon"));
  add_seed(sim_c);
  add_output(sim_c);

  auto* kern = app.add_subcommand("kernel-cdf", "evaluate the transition kernel CDF");
  add_a(kern, true);
  add_direction(kern);
  kern->add_option("--x", c.x, "forward: current value; reversed: next value")
      ->required()
      ->check(positive("x"));
  kern->add_option("--y", c.y, "forward: next value; reversed: current value")
      ->required()
      ->check(positive("y"));

  auto* cond = app.add_subcommand("conditional", "evaluate a conditional distribution query");
  cond->add_option("--query", c.input_path, "JSON query file")->required();
  cond->add_option("--mc", c.mc, "also estimate by Monte Carlo with this many draws");
  add_seed(cond);

  auto* ident = app.add_subcommand("identify", "identify (a, direction) from a path CSV");
  ident->add_option("--in", c.input_path, "path CSV (t,value)")->required();
  ident->add_option("--rel-tol", c.rel_tol, "ratio clustering tolerance")
      ->check(positive("rel-tol"));

  auto* verify = app.add_subcommand("verify", "run the statistical battery");
  add_a(verify, true);
  add_direction(verify);
  verify->add_flag("--continuous", c.continuous, "check the continuous-time process");
  verify->add_option("--epsilon", c.epsilon, "skeleton mesh (continuous only)")
      ->check(positive("epsilon"));
  verify->add_option("--out", c.output_path, "report JSON file (default: standard output)");
  add_seed(verify);
  verify->add_flag("--test-corrupt", c.corrupt, "")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (sim_d->parsed()) return cmd_simulate_discrete(c, out, err);
    if (sim_c->parsed()) return cmd_simulate_continuous(c, out, err);
    if (kern->parsed()) return cmd_kernel(c, out);
    if (cond->parsed()) return cmd_conditional(c, out);
    if (ident->parsed()) return cmd_identify(c, out, err);
    if (verify->parsed()) return cmd_verify(c, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace maxstable
