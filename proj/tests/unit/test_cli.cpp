#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "schwarz_ocp/cli.hpp"

using namespace schwarz_ocp;
using namespace schwarz_ocp::cli;

namespace {

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("schwarz_ocp_cli_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("defaults") {
  const RunConfig cfg = parse_config({"table1"}, std::nullopt);
  CHECK(cfg.command == Command::Table1);
  CHECK(cfg.n == 64);
  CHECK(cfg.dim == 2);
  CHECK(cfg.alphas == std::vector<double>{1e-2, 1e-4, 1e-6});
  CHECK(cfg.deltas == std::vector<int>{1, 2, 3, 4});
  CHECK(cfg.max_sweeps == 5);
  CHECK(cfg.convention == OverlapConvention::ExtendBoth);
  CHECK(cfg.init == InitPolicy::Ones);
  CHECK(cfg.jobs == 1);
  CHECK(cfg.out_dir == "schwarz_ocp_out");
  CHECK(parse_config({"table2"}, std::nullopt).alphas == std::vector<double>{1e-6});
}

TEST_CASE("flags and repeatable options") {
  const RunConfig cfg = parse_config({"--alpha", "1e-6", "--delta", "2", "single"}, std::nullopt);
  CHECK(cfg.command == Command::Single);
  CHECK(cfg.alphas == std::vector<double>{1e-6});
  CHECK(cfg.deltas == std::vector<int>{2});

  const RunConfig many = parse_config(
      {"table1", "--alpha", "1e-2", "--alpha", "1e-4", "--delta", "1", "--delta", "3", "--N", "32", "--jobs", "4",
       "--convention", "half-overlap", "--init", "random", "--seed", "5", "--tol", "1e-12", "--max-sweeps", "8"},
      std::nullopt);
  CHECK(many.alphas == std::vector<double>{1e-2, 1e-4});
  CHECK(many.deltas == std::vector<int>{1, 3});
  CHECK(many.n == 32);
  CHECK(many.jobs == 4);
  CHECK(many.convention == OverlapConvention::HalfOverlap);
  CHECK(many.init == InitPolicy::Random);
  CHECK(many.seed == 5);
  CHECK(many.tol == 1e-12);
  CHECK(many.max_sweeps == 8);
}

TEST_CASE("usage errors name the culprit") {
  auto message = [](std::vector<std::string> args) -> std::string {
    try {
      parse_config(args, std::nullopt);
    } catch (const UsageError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(message({"--N", "63", "table1"}).find("--N") != std::string::npos);
  CHECK(message({"--N", "63", "table1"}).find("even") != std::string::npos);
  CHECK(message({"--delta", "40", "table1"}).find("--delta") != std::string::npos);
  CHECK(message({"--convention", "sideways", "table1"}).find("--convention") != std::string::npos);
  CHECK(message({"--bogus", "table1"}).find("bogus") != std::string::npos);
  CHECK_FALSE(message({}).empty());
  CHECK_THROWS_AS(parse_config({"--help"}, std::nullopt), HelpRequested);
}

TEST_CASE("config file precedence and unknown keys") {
  const auto dir = temp_dir("config");
  const auto path = (dir / "run.cfg").string();
  {
    std::ofstream out(path);
    out << "# experiment\nN = 32\nalpha = 1e-2, 1e-4\ndelta=2\nmax-sweeps = 3\nout = from_file\n";
  }
  const RunConfig a = parse_config({"--config", path, "table1"}, std::nullopt);
  CHECK(a.n == 32);
  CHECK(a.alphas == std::vector<double>{1e-2, 1e-4});
  CHECK(a.deltas == std::vector<int>{2});
  CHECK(a.max_sweeps == 3);
  CHECK(a.out_dir == "from_file");
  CHECK(a.config_file == path);

  const RunConfig b = parse_config({"--config", path, "--N", "16", "--out", "flag", "table1"}, std::string("env"));
  CHECK(b.n == 16);
  CHECK(b.out_dir == "flag");

  {
    std::ofstream out(path);
    out << "colour = blue\n";
  }
  try {
    parse_config({"--config", path, "table1"}, std::nullopt);
    FAIL("expected a usage error");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("colour") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config({"--config", (dir / "missing.cfg").string(), "table1"}, std::nullopt), UsageError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("output directory falls back to the environment value") {
  CHECK(parse_config({"figure4"}, std::string("/tmp/somewhere")).out_dir == "/tmp/somewhere");
}

TEST_CASE("run_cells orders records by kind, alpha and delta") {
  RunConfig cfg;
  cfg.n = 8;
  std::vector<ProblemSpec> specs{make_cell_spec(cfg, ProblemKind::OCP, 1e-4, 2),
                                 make_cell_spec(cfg, ProblemKind::OCP, 1e-2, 1),
                                 make_cell_spec(cfg, ProblemKind::Elliptic, 1.0, 1),
                                 make_cell_spec(cfg, ProblemKind::OCP, 1e-4, 1)};
  const auto serial = run_cells(specs, 1, MeritNorm::Split);
  const auto parallel = run_cells(specs, 3, MeritNorm::Split);
  REQUIRE(serial.size() == 4);
  CHECK(serial[0].kind == ProblemKind::Elliptic);
  CHECK(serial[1].alpha == 1e-2);
  CHECK(serial[2].delta == 1);
  CHECK(serial[3].delta == 2);
  for (std::size_t i = 0; i < serial.size(); ++i)
    for (std::size_t k = 0; k < serial[i].entries.size(); ++k)
      CHECK(serial[i].entries[k].error == parallel[i].entries[k].error);
}

TEST_CASE("suite outputs are deterministic") {
  const auto d1 = temp_dir("det1");
  const auto d2 = temp_dir("det2");
  for (const auto& d : {d1, d2}) {
    RunConfig cfg = parse_config({"--N", "16", "--out", d.string(), "--jobs", "2", "table1"}, std::nullopt);
    const SuiteOutcome o = run_suite(cfg);
    CHECK(o.exit_code == 0);
    CHECK(o.files.size() == 4);
  }
  for (auto name : {"table1.txt", "table1.md", "records.csv", "metadata.json"})
    CHECK(slurp(d1 / name) == slurp(d2 / name));
  std::filesystem::remove_all(d1);
  std::filesystem::remove_all(d2);
}

TEST_CASE("figure4 writes the gamma scan") {
  const auto d = temp_dir("fig4");
  const SuiteOutcome o = run_suite(parse_config({"--out", d.string(), "figure4"}, std::nullopt));
  CHECK(o.exit_code == 0);
  const std::string scan = slurp(d / "figure4.dat");
  CHECK(scan.rfind("# gamma rho_c\n", 0) == 0);
  CHECK(std::filesystem::exists(d / "metadata.json"));
  std::filesystem::remove_all(d);
}

TEST_CASE("fixture regressions exit with 2") {
  const auto d = temp_dir("fixtures");
  {
    std::ofstream out(d / "table2_reference.csv");
    out << "kind,alpha,delta,k,quantity,value\nalpha-elliptic,1e-6,1,1,error,1.0\n";
  }
  RunConfig cfg = parse_config({"--out", (d / "out").string(), "--fixtures", d.string(), "--delta", "1",
                                "--max-sweeps", "5", "table2"},
                               std::nullopt);
  const SuiteOutcome o = run_suite(cfg);
  CHECK(o.exit_code == 2);
  bool reported = false;
  for (const auto& l : o.log)
    if (l.find("MISMATCH") != std::string::npos) reported = true;
  CHECK(reported);
  std::filesystem::remove_all(d);
}

TEST_CASE("verify at N = 8, seed 7 passes every checker") {
  const VerifySummary v = run_verify({8}, 7, 20);
  CHECK(v.all_passed());
  CHECK(v.max_principle_total == 40);
  CHECK(v.lemma_pass == 20);
  CHECK(v.domination_pass == 20);
  CHECK(v.solver_pass == 20);
  CHECK(v.invariants_total == 80);
}

TEST_CASE("main_entry exit codes") {
  CHECK(main_entry({"--N", "63", "table1"}) == 1);
  CHECK(main_entry({"--help"}) == 0);
}
