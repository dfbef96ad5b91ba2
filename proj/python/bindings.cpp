#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "schwarz_ocp/cli.hpp"

namespace py = pybind11;
using namespace schwarz_ocp;

namespace {

py::dict record_to_dict(const ConvergenceRecord& r) {
  py::dict d;
  d["kind"] = std::string(to_string(r.kind));
  d["alpha"] = r.alpha;
  d["delta"] = r.delta;
  d["n"] = r.n;
  d["dim"] = r.dim;
  d["shift_c"] = r.shift_c;
  d["norm"] = std::string(to_string(r.norm));
  py::list errors, rates;
  for (const auto& e : r.entries) {
    errors.append(e.error);
    rates.append(e.rate ? py::cast(*e.rate) : py::none());
  }
  d["errors"] = errors;
  d["rates"] = rates;
  d["converged"] = r.converged;
  return d;
}

py::dict run_cell(const std::string& kind, double alpha, int delta, int n, int dim, int max_sweeps,
                  const std::string& convention, const std::string& init, std::uint64_t seed,
                  const std::string& merit) {
  cli::RunConfig cfg;
  cfg.n = n;
  cfg.dim = dim;
  cfg.max_sweeps = max_sweeps;
  cfg.convention = parse_overlap_convention(convention);
  cfg.init = parse_init_policy(init);
  cfg.seed = seed;
  const ProblemSpec spec = cli::make_cell_spec(cfg, parse_problem_kind(kind), alpha, delta);
  return record_to_dict(extract_rates(run(spec), parse_merit_norm(merit)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Overlapping Schwarz alternating method for elliptic optimal control";

  m.def("run_cell", &run_cell, py::arg("kind") = "ocp", py::arg("alpha") = 1e-2, py::arg("delta") = 1,
        py::arg("n") = 64, py::arg("dim") = 2, py::arg("max_sweeps") = 5,
        py::arg("convention") = "extend-both", py::arg("init") = "ones", py::arg("seed") = 0,
        py::arg("merit") = "split",
        "Runs one Schwarz cell and returns its per-sweep errors and rates.");

  m.def("format_sci5", &report::format_sci5);
  m.def("gamma_of_alpha", &analytic1d::gamma_of_alpha);
  m.def("g", &analytic1d::g);
  m.def("rho_e", &analytic1d::rho_e);
  m.def("rho_e_beta", &analytic1d::rho_e_beta);
  m.def("rho_c", [](double r, double s, double alpha) { return analytic1d::rho_c({r, s, alpha}); },
        py::arg("r"), py::arg("s"), py::arg("alpha"));
  m.def("rate_vs_gamma_scan",
        [](double r, double s, double lo, double hi, int count) {
          std::vector<std::pair<double, double>> out;
          for (const auto& p : analytic1d::rate_vs_gamma_scan(r, s, lo, hi, count)) out.emplace_back(p.gamma, p.rho_c);
          return out;
        });

  m.def("verify",
        [](std::vector<int> sizes, std::uint64_t seed, int seeds) {
          const auto v = cli::run_verify(sizes, seed, seeds);
          py::dict d;
          d["max_principle"] = py::make_tuple(v.max_principle_pass, v.max_principle_total);
          d["lemma"] = py::make_tuple(v.lemma_pass, v.lemma_total);
          d["domination"] = py::make_tuple(v.domination_pass, v.domination_total);
          d["solver"] = py::make_tuple(v.solver_pass, v.solver_total);
          d["invariants"] = py::make_tuple(v.invariants_pass, v.invariants_total);
          d["failures"] = v.failures;
          return d;
        },
        py::arg("sizes") = std::vector<int>{4, 8, 16}, py::arg("seed") = 0, py::arg("seeds") = 20);

  m.def("main", [](std::vector<std::string> args) { return cli::main_entry(args); },
        "Runs the command-line interface with the given arguments.");
}
