#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "schwarz_ocp/report.hpp"

namespace schwarz_ocp::cli {

enum class Command { Table1, Table2, Figure3, Figure4, Single, Verify };

std::string_view to_string(Command c);

/// Bad flag, bad config key or invalid value. The message names the culprit.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// --help was given; what() holds the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::Table1;
  int n = 64;
  int dim = 2;
  std::vector<double> alphas{1e-2, 1e-4, 1e-6};
  std::vector<int> deltas{1, 2, 3, 4};
  OverlapConvention convention = OverlapConvention::ExtendBoth;
  InitPolicy init = InitPolicy::Ones;
  std::uint64_t seed = 0;
  int max_sweeps = 5;
  double tol = 0.0;
  int jobs = 1;
  std::string out_dir = "schwarz_ocp_out";
  std::optional<std::string> config_file;
  ProblemKind kind = ProblemKind::OCP;  // `single` only
  MeritNorm merit = MeritNorm::Split;
  std::string fixtures_dir;
  bool n_given = false;      // `verify` sweeps N in {4, 8, 16} unless --N is given
  bool alpha_given = false;  // `table2` defaults to alpha = 1e-6 unless given
};

/// Reads flat key=value lines; '#' starts a comment; blank lines ignored.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Defaults, then config-file entries, then flags (highest precedence).
/// `args` excludes the program name. `env_out` is the SCHWARZ_OCP_OUT value.
RunConfig parse_config(const std::vector<std::string>& args, std::optional<std::string> env_out);
RunConfig parse_config(const std::vector<std::string>& args);

/// Problem for one experiment cell under the run's conventions.
ProblemSpec make_cell_spec(const RunConfig& cfg, ProblemKind kind, double alpha, int delta);

/// Runs the cells (optionally on `jobs` threads) and returns one record per
/// spec, sorted by (kind, alpha, delta).
std::vector<ConvergenceRecord> run_cells(const std::vector<ProblemSpec>& specs, int jobs,
                                         MeritNorm norm);

struct SuiteOutcome {
  report::ExperimentSuiteResult result;
  int exit_code = 0;  // 0 ok, 1 usage/solver error, 2 regression or checker failure
  std::vector<std::string> log;
  std::vector<std::string> files;
};

SuiteOutcome run_suite(const RunConfig& cfg);

/// Outcome of the property checkers run by `verify`.
struct VerifySummary {
  int max_principle_pass = 0, max_principle_total = 0;
  int lemma_pass = 0, lemma_total = 0;
  int domination_pass = 0, domination_total = 0;
  int solver_pass = 0, solver_total = 0;
  int invariants_pass = 0, invariants_total = 0;
  std::vector<std::string> failures;

  bool all_passed() const { return failures.empty(); }
};

VerifySummary run_verify(const std::vector<int>& sizes, std::uint64_t first_seed, int seeds);

/// Entry point used by the executable; returns the process exit code.
int main_entry(const std::vector<std::string>& args);

}  // namespace schwarz_ocp::cli
