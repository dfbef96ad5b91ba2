#include "schwarz_ocp/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

namespace schwarz_ocp::cli {

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Table1: return "table1";
    case Command::Table2: return "table2";
    case Command::Figure3: return "figure3";
    case Command::Figure4: return "figure4";
    case Command::Single: return "single";
    case Command::Verify: return "verify";
  }
  return "?";
}

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> list_items(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  for (char ch : value + ",") {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else {
      item += ch;
    }
  }
  return out;
}

template <typename T>
T parse_value(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  T v{};
  in >> v;
  if (in.fail() || !in.eof()) throw UsageError("invalid value '" + text + "' for '" + key + "'");
  return v;
}

template <typename Fn>
auto rethrow_as_usage(const std::string& key, Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    throw UsageError("invalid value for '" + key + "': " + e.what());
  }
}

void validate(const RunConfig& cfg) {
  if (cfg.dim != 1 && cfg.dim != 2) throw UsageError("--dim must be 1 or 2");
  if (cfg.n < 4) throw UsageError("--N must be at least 4");
  if (cfg.n % 2 != 0) throw UsageError("--N must be even (odd N has no midline split)");
  if (cfg.alphas.empty()) throw UsageError("--alpha needs at least one value");
  for (double a : cfg.alphas)
    if (!(a > 0.0)) throw UsageError("--alpha values must be positive");
  if (cfg.deltas.empty()) throw UsageError("--delta needs at least one value");
  const bool uses_deltas = cfg.command != Command::Verify && cfg.command != Command::Figure4;
  for (int d : uses_deltas ? cfg.deltas : std::vector<int>{})
    if (d < 1 || cfg.n / 2 + d >= cfg.n)
      throw UsageError("--delta " + std::to_string(d) + " does not fit a grid with N=" + std::to_string(cfg.n));
  if (cfg.max_sweeps < 1) throw UsageError("--max-sweeps must be at least 1");
  if (!(cfg.tol >= 0.0)) throw UsageError("--tol must be nonnegative");
  if (cfg.jobs < 1) throw UsageError("--jobs must be at least 1");
  if (cfg.out_dir.empty()) throw UsageError("--out must not be empty");
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

RunConfig parse_config(const std::vector<std::string>& args) {
  std::optional<std::string> env;
  if (const char* v = std::getenv("SCHWARZ_OCP_OUT"); v && *v) env = v;
  return parse_config(args, env);
}

RunConfig parse_config(const std::vector<std::string>& args, std::optional<std::string> env_out) {
  RunConfig cfg;
  if (env_out) cfg.out_dir = *env_out;

  CLI::App app{"Overlapping Schwarz alternating method for elliptic optimal control", "schwarz-ocp"};
  app.require_subcommand(1);
  app.fallthrough();

  int n = cfg.n, dim = cfg.dim, max_sweeps = cfg.max_sweeps, jobs = cfg.jobs;
  std::vector<double> alphas;
  std::vector<int> deltas;
  std::string convention, init, kind, merit, out, config, fixtures;
  std::uint64_t seed = 0;
  double tol = 0.0;

  std::map<std::string, CLI::Option*> opt;
  opt["N"] = app.add_option("--N", n, "cells per side (even)");
  opt["dim"] = app.add_option("--dim", dim, "spatial dimension (1 or 2)");
  opt["alpha"] = app.add_option("--alpha", alphas, "regularization parameter (repeatable)")
                     ->allow_extra_args(false);
  opt["delta"] = app.add_option("--delta", deltas, "overlap layers (repeatable)")->allow_extra_args(false);
  opt["convention"] = app.add_option("--convention", convention, "extend-both | half-overlap");
  opt["init"] = app.add_option("--init", init, "ones | zero | random");
  opt["seed"] = app.add_option("--seed", seed, "random seed");
  opt["tol"] = app.add_option("--tol", tol, "stop when the merit max-norm drops to this value");
  opt["max_sweeps"] = app.add_option("--max-sweeps", max_sweeps, "sweep cap");
  opt["jobs"] = app.add_option("--jobs", jobs, "parallel experiment cells");
  opt["out"] = app.add_option("--out", out, "output directory (fallback: $SCHWARZ_OCP_OUT)");
  opt["kind"] = app.add_option("--kind", kind, "ocp | elliptic | alpha-elliptic (single)");
  opt["merit"] = app.add_option("--merit", merit, "split | vector (OCP error norm)");
  opt["fixtures"] = app.add_option("--fixtures", fixtures, "directory with reference tables");
  app.add_option("--config", config, "key=value config file");

  app.add_subcommand("table1", "elliptic and optimal control convergence table");
  app.add_subcommand("table2", "alpha-dependent elliptic equation table");
  app.add_subcommand("figure3", "convergence curves, one file per delta");
  app.add_subcommand("figure4", "1D rate rho_c versus gamma for r=0.4, s=0.6");
  app.add_subcommand("single", "one problem kind over the alpha and delta lists");
  app.add_subcommand("verify", "property checkers over N in {4, 8, 16} and 20 seeds");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  for (auto* sub : app.get_subcommands()) {
    const std::string name = sub->get_name();
    for (auto c : {Command::Table1, Command::Table2, Command::Figure3, Command::Figure4, Command::Single,
                   Command::Verify})
      if (name == to_string(c)) cfg.command = c;
  }

  // Config file first, so flags override it.
  std::map<std::string, std::string> file;
  if (!config.empty()) {
    cfg.config_file = config;
    file = read_config_file(config);
  }
  auto given = [&](const std::string& key) { return opt.at(key)->count() > 0; };
  for (const auto& [raw_key, value] : file) {
    std::string key = raw_key;
    if (key == "max-sweeps") key = "max_sweeps";
    if (!opt.contains(key)) throw UsageError("unknown config key '" + raw_key + "'");
    if (given(key)) continue;
    if (key == "N") {
      cfg.n = parse_value<int>(key, value);
      cfg.n_given = true;
    } else if (key == "dim") {
      cfg.dim = parse_value<int>(key, value);
    } else if (key == "alpha") {
      cfg.alphas.clear();
      for (const auto& item : list_items(value)) cfg.alphas.push_back(parse_value<double>(key, item));
      cfg.alpha_given = true;
    } else if (key == "delta") {
      cfg.deltas.clear();
      for (const auto& item : list_items(value)) cfg.deltas.push_back(parse_value<int>(key, item));
    } else if (key == "convention") {
      cfg.convention = rethrow_as_usage(key, [&] { return parse_overlap_convention(value); });
    } else if (key == "init") {
      cfg.init = rethrow_as_usage(key, [&] { return parse_init_policy(value); });
    } else if (key == "seed") {
      cfg.seed = parse_value<std::uint64_t>(key, value);
    } else if (key == "tol") {
      cfg.tol = parse_value<double>(key, value);
    } else if (key == "max_sweeps") {
      cfg.max_sweeps = parse_value<int>(key, value);
    } else if (key == "jobs") {
      cfg.jobs = parse_value<int>(key, value);
    } else if (key == "out") {
      cfg.out_dir = value;
    } else if (key == "kind") {
      cfg.kind = rethrow_as_usage(key, [&] { return parse_problem_kind(value); });
    } else if (key == "merit") {
      cfg.merit = rethrow_as_usage(key, [&] { return parse_merit_norm(value); });
    } else if (key == "fixtures") {
      cfg.fixtures_dir = value;
    }
  }

  if (given("N")) {
    cfg.n = n;
    cfg.n_given = true;
  }
  if (given("dim")) cfg.dim = dim;
  if (given("alpha")) {
    cfg.alphas = alphas;
    cfg.alpha_given = true;
  }
  if (given("delta")) cfg.deltas = deltas;
  if (given("convention")) cfg.convention = rethrow_as_usage("--convention", [&] { return parse_overlap_convention(convention); });
  if (given("init")) cfg.init = rethrow_as_usage("--init", [&] { return parse_init_policy(init); });
  if (given("seed")) cfg.seed = seed;
  if (given("tol")) cfg.tol = tol;
  if (given("max_sweeps")) cfg.max_sweeps = max_sweeps;
  if (given("jobs")) cfg.jobs = jobs;
  if (given("out")) cfg.out_dir = out;
  if (given("kind")) cfg.kind = rethrow_as_usage("--kind", [&] { return parse_problem_kind(kind); });
  if (given("merit")) cfg.merit = rethrow_as_usage("--merit", [&] { return parse_merit_norm(merit); });
  if (given("fixtures")) cfg.fixtures_dir = fixtures;

  if (cfg.command == Command::Table2 && !cfg.alpha_given) cfg.alphas = {1e-6};
  validate(cfg);
  return cfg;
}

int main_entry(const std::vector<std::string>& args) {
  RunConfig cfg;
  try {
    cfg = parse_config(args);
  } catch (const HelpRequested& h) {
    std::cout << h.what();
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  }
  try {
    const SuiteOutcome outcome = run_suite(cfg);
    for (const auto& line : outcome.log) std::cout << line << '\n';
    for (const auto& f : outcome.files) std::cout << "wrote " << f << '\n';
    return outcome.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace schwarz_ocp::cli
