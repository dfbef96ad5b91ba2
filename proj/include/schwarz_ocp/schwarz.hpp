#pragma once

#include <array>
#include <optional>
#include <vector>

#include "schwarz_ocp/saddle.hpp"

namespace schwarz_ocp {

enum class Side { Left, Right };

/// ErrorPropagation iterates directly on the homogeneous error system,
/// starting from E0 = exact - initial guess. Direct iterates on (Y, P~)
/// with the problem data. The two agree up to rounding; the first has no
/// cancellation once the error is tiny.
enum class IterationMode { ErrorPropagation, Direct };

struct IterateState {
  ProblemKind kind = ProblemKind::OCP;
  GridFunction y;                 // Y, or W for the elliptic kinds
  std::optional<GridFunction> p;  // P~, OCP only
  int sweep = 0;                  // k; 0 for the initial guess
  std::optional<Side> last;       // subdomain updated last
};

struct SweepHistory {
  ProblemSpec spec;
  IterationMode mode = IterationMode::ErrorPropagation;
  /// states[0] is the initial iterate, then one entry per half-step.
  std::vector<IterateState> states;
  /// Exact discrete solution (all zeros in error-propagation mode).
  IterateState exact;
  bool converged = false;

  int sweeps_done() const { return static_cast<int>((states.size() - 1) / 2); }
  /// Error at a state: the state itself in error-propagation mode,
  /// exact - state otherwise.
  IterateState error(std::size_t state_index) const;
  /// Error after full sweep k (k = 0 is the initial error).
  IterateState error_after_sweep(int k) const { return error(2 * static_cast<std::size_t>(k)); }
};

/// Alternating Schwarz iteration for one problem, with the left and right
/// subdomain factorizations built once. Immutable; run() may be called
/// from several threads.
class SchwarzIteration {
 public:
  explicit SchwarzIteration(ProblemSpec spec, IterationMode mode = IterationMode::ErrorPropagation);

  const ProblemSpec& spec() const { return spec_; }
  IterationMode mode() const { return mode_; }
  const StencilOperator& op() const { return op_; }
  const IterateState& exact() const { return exact_; }

  IterateState initial_state() const;

  /// Solves on one subdomain with Dirichlet data from `state` on its
  /// boundary; only that subdomain's interior values change.
  IterateState half_step(const IterateState& state, Side side) const;

  SweepHistory run() const;
  SweepHistory run_from(IterateState initial) const;

  /// Merit used by the stopping test: max of E_y^2 + alpha^-1 E_p~^2 (OCP)
  /// or max |E| (elliptic kinds).
  double stopping_measure(const IterateState& error) const;

 private:
  const Subdomain& subdomain(Side side) const;

  ProblemSpec spec_;
  IterationMode mode_;
  StencilOperator op_;
  GridFunction zero_;
  std::array<std::optional<CoupledSolver>, 2> coupled_;
  std::array<std::optional<EllipticSolver>, 2> elliptic_;
  IterateState exact_;
};

/// Exact discrete solution of the global problem (zero physical boundary).
IterateState exact_solution(const ProblemSpec& spec);

/// Single half-step without a prebuilt iteration (factorizes on the fly).
/// `sub` must be one of the two subdomains of `spec`.
IterateState half_step(const IterateState& state, const Subdomain& sub, const ProblemSpec& spec,
                       IterationMode mode = IterationMode::Direct);

SweepHistory run(const ProblemSpec& spec, IterationMode mode = IterationMode::ErrorPropagation);

struct DominationPair {
  SweepHistory ocp;    // error-propagation OCP history
  SweepHistory bound;  // elliptic history started from the OCP initial merit vector
};

/// Runs the OCP sweep and the homogeneous elliptic sweep (same operator and
/// decomposition) whose initial state is the merit vector of the OCP initial
/// error.
DominationPair run_domination_pair(const ProblemSpec& spec_ocp);

}  // namespace schwarz_ocp
