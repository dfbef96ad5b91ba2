#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <random>
#include <sstream>
#include <thread>

#include "schwarz_ocp/cli.hpp"

#ifndef SCHWARZ_OCP_FIXTURE_DIR
#define SCHWARZ_OCP_FIXTURE_DIR "data"
#endif

namespace schwarz_ocp::cli {

namespace {

constexpr double kFigure4R = 0.4;
constexpr double kFigure4S = 0.6;
constexpr double kFigure4GammaLo = 1e-2;
constexpr double kFigure4GammaHi = 1e2;
constexpr int kFigure4Samples = 200;
constexpr int kVerifySeeds = 20;
constexpr double kRouteAgreement = 1e-8;
constexpr double kFixedPointTol = 1e-10;

int kind_rank(ProblemKind k) {
  switch (k) {
    case ProblemKind::Elliptic: return 0;
    case ProblemKind::OCP: return 1;
    case ProblemKind::AlphaElliptic: return 2;
  }
  return 3;
}

bool canonical_setup(const RunConfig& cfg) {
  return cfg.n == 64 && cfg.dim == 2 && cfg.convention == OverlapConvention::ExtendBoth &&
         cfg.init == InitPolicy::Ones && cfg.merit == MeritNorm::Split && cfg.tol == 0.0 &&
         cfg.max_sweeps >= 5;
}

std::string fixture_dir(const RunConfig& cfg) {
  return cfg.fixtures_dir.empty() ? std::string(SCHWARZ_OCP_FIXTURE_DIR) : cfg.fixtures_dir;
}

std::string format_alpha(double a) {
  std::ostringstream out;
  out << a;
  return out.str();
}

std::map<std::string, std::string> base_metadata(const RunConfig& cfg) {
  std::map<std::string, std::string> m;
  m["command"] = std::string(to_string(cfg.command));
  m["dim"] = std::to_string(cfg.dim);
  m["n"] = std::to_string(cfg.n);
  m["convention"] = std::string(to_string(cfg.convention));
  m["init"] = std::string(to_string(cfg.init));
  m["seed"] = std::to_string(cfg.seed);
  m["max_sweeps"] = std::to_string(cfg.max_sweeps);
  m["tol"] = report::format_full(cfg.tol);
  m["merit"] = std::string(to_string(cfg.merit));
  return m;
}

std::vector<ProblemSpec> table1_specs(const RunConfig& cfg) {
  std::vector<ProblemSpec> specs;
  for (int d : cfg.deltas) specs.push_back(make_cell_spec(cfg, ProblemKind::Elliptic, 1.0, d));
  for (double a : cfg.alphas)
    for (int d : cfg.deltas) specs.push_back(make_cell_spec(cfg, ProblemKind::OCP, a, d));
  return specs;
}

std::vector<ProblemSpec> kind_specs(const RunConfig& cfg, ProblemKind kind) {
  std::vector<ProblemSpec> specs;
  if (kind == ProblemKind::Elliptic) {
    for (int d : cfg.deltas) specs.push_back(make_cell_spec(cfg, kind, 1.0, d));
    return specs;
  }
  for (double a : cfg.alphas)
    for (int d : cfg.deltas) specs.push_back(make_cell_spec(cfg, kind, a, d));
  return specs;
}

int compare_fixtures(const RunConfig& cfg, const std::vector<ConvergenceRecord>& records,
                     const std::vector<std::string>& files, std::vector<std::string>& log) {
  if (!canonical_setup(cfg)) {
    log.push_back("fixture comparison skipped (non-reference configuration)");
    return 0;
  }
  std::vector<report::ReferenceCell> ref;
  for (const auto& name : files) {
    const auto path = std::filesystem::path(fixture_dir(cfg)) / name;
    if (!std::filesystem::exists(path)) {
      log.push_back("fixture comparison skipped (missing " + path.string() + ")");
      return 0;
    }
    auto cells = report::load_reference(path.string());
    ref.insert(ref.end(), cells.begin(), cells.end());
  }
  std::size_t checked = 0;
  for (const auto& cell : ref)
    if (report::lookup(records, cell)) ++checked;
  const auto mismatches = report::compare_to_reference(records, ref);
  for (const auto& m : mismatches) {
    std::ostringstream line;
    line << "MISMATCH " << to_string(m.cell.kind);
    if (m.cell.alpha) line << " alpha=" << format_alpha(*m.cell.alpha);
    line << " delta=" << m.cell.delta << " k=" << m.cell.k << (m.cell.is_rate ? " rate" : " error")
         << " expected=" << report::format_sci5(m.cell.value)
         << " got=" << (m.measured ? report::format_sci5(*m.measured) : std::string("-"))
         << " rel=" << m.relative_error;
    log.push_back(line.str());
  }
  log.push_back("fixtures: " + std::to_string(checked - mismatches.size()) + "/" + std::to_string(checked) +
                " cells within 1e-3");
  return mismatches.empty() ? 0 : 2;
}

std::string single_listing(const std::vector<ConvergenceRecord>& records) {
  std::ostringstream out;
  for (const auto& r : records) {
    out << "# " << to_string(r.kind) << " alpha=" << format_alpha(r.alpha) << " delta=" << r.delta
        << " n=" << r.n << " dim=" << r.dim << " norm=" << to_string(r.norm) << '\n';
    out << "k  error       rate\n";
    for (const auto& e : r.entries)
      out << e.k << "  " << report::format_sci5(e.error) << "  "
          << (e.rate ? report::format_sci5(*e.rate) : std::string("-")) << '\n';
  }
  return out.str();
}

double unit_random(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

// Random values everywhere, boundary included.
GridFunction random_everywhere(const Grid& grid, std::mt19937_64& gen) {
  GridFunction z(grid);
  for (auto& v : z.values()) v = unit_random(gen);
  return z;
}

GridFunction random_nonnegative_interior(const Grid& grid, std::mt19937_64& gen) {
  GridFunction z(grid);
  for (std::size_t idx : grid.interior_indices()) z[idx] = 0.5 * (unit_random(gen) + 1.0);
  return z;
}

void tally(bool ok, int& pass, int& total, std::vector<std::string>& failures, const std::string& what) {
  ++total;
  if (ok) {
    ++pass;
  } else {
    failures.push_back(what);
  }
}

}  // namespace

ProblemSpec make_cell_spec(const RunConfig& cfg, ProblemKind kind, double alpha, int delta) {
  ProblemSpec spec = make_problem(kind, build_grid(cfg.dim, cfg.n), alpha, delta, cfg.convention);
  spec.init = cfg.init;
  spec.seed = cfg.seed;
  spec.tol = cfg.tol;
  spec.max_sweeps = cfg.max_sweeps;
  spec.validate();
  return spec;
}

std::vector<ConvergenceRecord> run_cells(const std::vector<ProblemSpec>& specs, int jobs, MeritNorm norm) {
  std::vector<ConvergenceRecord> records(specs.size());
  std::vector<std::exception_ptr> errors(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      try {
        records[i] = extract_rates(run(specs[i]), norm);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(specs.size(), 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::stable_sort(records.begin(), records.end(), [](const ConvergenceRecord& a, const ConvergenceRecord& b) {
    if (a.kind != b.kind) return kind_rank(a.kind) < kind_rank(b.kind);
    if (a.alpha != b.alpha) return a.alpha > b.alpha;
    return a.delta < b.delta;
  });
  return records;
}

VerifySummary run_verify(const std::vector<int>& sizes, std::uint64_t first_seed, int seeds) {
  static constexpr double kAlphas[] = {1.0, 1e-2, 1e-4, 1e-6};
  VerifySummary s;
  for (int n : sizes) {
    const Grid grid = build_grid(2, n);
    for (int i = 0; i < seeds; ++i) {
      const std::uint64_t seed = first_seed + static_cast<std::uint64_t>(i);
      const double alpha = kAlphas[seed % 4];
      const int delta = 1 + static_cast<int>(seed % 2) * std::max(0, n / 4 - 1);
      const std::string tag = "N=" + std::to_string(n) + " seed=" + std::to_string(seed);
      std::mt19937_64 gen(seed);

      ProblemSpec spec = make_problem(ProblemKind::OCP, grid, alpha, delta);
      spec.init = InitPolicy::Random;
      spec.seed = seed;
      spec.tol = 0.0;
      spec.max_sweeps = 3;
      const StencilOperator op(grid, 0.0);
      const Subdomain& left = spec.decomposition.left;

      // Maximum principle on a sign-definite solve, globally and on a strip.
      {
        GridFunction rhs = random_nonnegative_interior(grid, gen);
        rhs *= -1.0;
        const GridFunction z = solve_elliptic(op, Subdomain::whole(grid), rhs, random_everywhere(grid, gen));
        const Verdict v = check_max_principle(op, z);
        tally(v.passed(), s.max_principle_pass, s.max_principle_total, s.failures,
              "max principle (global) " + tag + ": " + v.detail);
        const GridFunction rhs_pos = random_nonnegative_interior(grid, gen);
        const GridFunction w = solve_elliptic(op, left, rhs_pos, random_everywhere(grid, gen));
        const Verdict vs = check_max_principle(op, w, left);
        tally(vs.passed(), s.max_principle_pass, s.max_principle_total, s.failures,
              "max principle (strip) " + tag + ": " + vs.detail);
      }

      // Lemma inequality on a homogeneous coupled subdomain solve.
      {
        const GridFunction zero(grid);
        const CoupledSolution sol = solve_coupled(assemble_coupled(
            op, left, alpha, zero, zero, random_everywhere(grid, gen), random_everywhere(grid, gen)));
        const Verdict v = check_lemma_inequality(op, sol.y, sol.p, 1.0 / alpha, left);
        tally(v.passed(), s.lemma_pass, s.lemma_total, s.failures, "lemma " + tag + ": " + v.detail);
      }

      // Domination of the OCP merit by the elliptic bound.
      {
        const Verdict v = check_domination(run_domination_pair(spec));
        tally(v.passed(), s.domination_pass, s.domination_total, s.failures,
              "domination " + tag + ": " + v.detail);
      }

      // Block and reduced routes agree (both enforce residual bounds).
      {
        const GridFunction f = sample_function(grid, AnalyticField::SeededRandom, seed + 101);
        const GridFunction yd = sample_function(grid, AnalyticField::SeededRandom, seed + 202);
        const GridFunction zero(grid);
        const Subdomain whole = Subdomain::whole(grid);
        bool ok = true;
        std::string detail;
        try {
          const CoupledSolution a = solve_coupled(assemble_coupled(op, whole, alpha, f, yd, zero, zero));
          const CoupledSolution b = solve_coupled_reduced(op, alpha, f, yd);
          const double scale_y = std::max(1.0, max_norm(a.y));
          const double scale_p = std::max(1.0, max_norm(a.p));
          const double dy = max_norm(a.y - b.y) / scale_y;
          const double dp = max_norm(a.p - b.p) / scale_p;
          ok = dy <= kRouteAgreement && dp <= kRouteAgreement;
          detail = "dy=" + report::format_sci5(dy) + " dp=" + report::format_sci5(dp);
        } catch (const SolverError& e) {
          ok = false;
          detail = e.what();
        }
        tally(ok, s.solver_pass, s.solver_total, s.failures, "solver routes " + tag + ": " + detail);
      }

      // Half-step locality and fixed point of the exact solution.
      {
        const SchwarzIteration it(spec, IterationMode::Direct);
        const IterateState start = it.initial_state();
        for (Side side : {Side::Left, Side::Right}) {
          const Subdomain& sub = side == Side::Left ? spec.decomposition.left : spec.decomposition.right;
          const IterateState next = it.half_step(start, side);
          bool local = true;
          for (std::size_t idx = 0; idx < grid.point_count(); ++idx) {
            if (sub.contains_interior(idx)) continue;
            if (next.y[idx] != start.y[idx] || (*next.p)[idx] != (*start.p)[idx]) local = false;
          }
          tally(local, s.invariants_pass, s.invariants_total, s.failures, "locality " + tag);

          const IterateState fixed = it.half_step(it.exact(), side);
          const double dy = max_norm(fixed.y - it.exact().y) / std::max(1.0, max_norm(it.exact().y));
          const double dp = max_norm(*fixed.p - *it.exact().p) / std::max(1.0, max_norm(*it.exact().p));
          tally(dy <= kFixedPointTol && dp <= kFixedPointTol, s.invariants_pass, s.invariants_total,
                s.failures, "fixed point " + tag);
        }
      }
    }
  }
  return s;
}

SuiteOutcome run_suite(const RunConfig& cfg) {
  SuiteOutcome out;
  out.result.metadata = base_metadata(cfg);
  auto emit = [&](const std::string& name, const std::string& contents) {
    report::write_file(cfg.out_dir, name, contents);
    out.files.push_back((std::filesystem::path(cfg.out_dir) / name).string());
  };
  auto emit_records = [&] {
    emit("records.csv", report::records_to_csv(out.result.records));
  };

  switch (cfg.command) {
    case Command::Table1: {
      out.result.records = run_cells(table1_specs(cfg), cfg.jobs, cfg.merit);
      const auto t = report::emit_table1(out.result.records);
      emit("table1.txt", t.text);
      emit("table1.md", t.markdown);
      emit_records();
      out.log.push_back(t.text);
      out.exit_code = compare_fixtures(cfg, out.result.records, {"table1_reference.csv"}, out.log);
      break;
    }
    case Command::Table2: {
      out.result.records = run_cells(kind_specs(cfg, ProblemKind::AlphaElliptic), cfg.jobs, cfg.merit);
      const auto t = report::emit_table2(out.result.records);
      emit("table2.txt", t.text);
      emit("table2.md", t.markdown);
      emit_records();
      out.log.push_back(t.text);
      out.exit_code = compare_fixtures(cfg, out.result.records, {"table2_reference.csv"}, out.log);
      break;
    }
    case Command::Figure3: {
      out.result.records = run_cells(table1_specs(cfg), cfg.jobs, cfg.merit);
      for (int d : cfg.deltas) {
        std::vector<ConvergenceRecord> panel;
        for (const auto& r : out.result.records)
          if (r.delta == d) panel.push_back(r);
        emit("figure3_delta" + std::to_string(d) + ".dat", report::emit_convergence_series(panel));
      }
      emit_records();
      break;
    }
    case Command::Figure4: {
      out.result.scans.push_back(analytic1d::rate_vs_gamma_scan(kFigure4R, kFigure4S, kFigure4GammaLo,
                                                                kFigure4GammaHi, kFigure4Samples));
      out.result.metadata["scan_r"] = report::format_full(kFigure4R);
      out.result.metadata["scan_s"] = report::format_full(kFigure4S);
      emit("figure4.dat", report::emit_gamma_scan(out.result.scans.back()));
      break;
    }
    case Command::Single: {
      out.result.records = run_cells(kind_specs(cfg, cfg.kind), cfg.jobs, cfg.merit);
      emit("single.txt", single_listing(out.result.records));
      emit_records();
      out.log.push_back(single_listing(out.result.records));
      out.exit_code = compare_fixtures(cfg, out.result.records,
                                       {"table1_reference.csv", "table2_reference.csv"}, out.log);
      break;
    }
    case Command::Verify: {
      const std::vector<int> sizes = cfg.n_given ? std::vector<int>{cfg.n} : std::vector<int>{4, 8, 16};
      const VerifySummary v = run_verify(sizes, cfg.seed, kVerifySeeds);
      std::ostringstream text;
      auto line = [&](const char* name, int pass, int total) {
        text << name << ": " << pass << "/" << total << (pass == total ? " PASS" : " FAIL") << '\n';
      };
      line("max principle", v.max_principle_pass, v.max_principle_total);
      line("lemma inequality", v.lemma_pass, v.lemma_total);
      line("domination", v.domination_pass, v.domination_total);
      line("solver routes", v.solver_pass, v.solver_total);
      line("half-step invariants", v.invariants_pass, v.invariants_total);
      for (const auto& f : v.failures) text << "FAILED " << f << '\n';
      emit("verify.txt", text.str());
      out.log.push_back(text.str());
      out.exit_code = v.all_passed() ? 0 : 2;
      break;
    }
  }
  emit("metadata.json", report::suite_metadata_json(out.result));
  return out;
}

}  // namespace schwarz_ocp::cli
