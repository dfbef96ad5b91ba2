#include "schwarz_ocp/schwarz.hpp"

#include "schwarz_ocp/metrics.hpp"

namespace schwarz_ocp {

namespace {

std::size_t side_index(Side s) { return s == Side::Left ? 0 : 1; }

}  // namespace

IterateState SweepHistory::error(std::size_t state_index) const {
  IterateState e = states.at(state_index);
  if (mode == IterationMode::ErrorPropagation) return e;
  e.y = exact.y - e.y;
  if (e.p) e.p = *exact.p - *e.p;
  return e;
}

IterateState exact_solution(const ProblemSpec& spec) {
  spec.validate();
  const StencilOperator op(spec.grid, spec.shift_c);
  const Subdomain whole = Subdomain::whole(spec.grid);
  const GridFunction zero(spec.grid);
  IterateState s;
  s.kind = spec.kind;
  if (spec.kind == ProblemKind::OCP) {
    auto sol = CoupledSolver(op, whole, spec.alpha).solve(spec.f, spec.y_d, zero, zero);
    s.y = std::move(sol.y);
    s.p = std::move(sol.p);
  } else {
    s.y = EllipticSolver(op, whole).solve(spec.f, zero);
  }
  return s;
}

SchwarzIteration::SchwarzIteration(ProblemSpec spec, IterationMode mode)
    : spec_(std::move(spec)), mode_(mode), op_(spec_.grid, spec_.shift_c), zero_(spec_.grid) {
  spec_.validate();
  for (Side side : {Side::Left, Side::Right}) {
    const auto i = side_index(side);
    if (spec_.kind == ProblemKind::OCP) {
      coupled_[i].emplace(op_, subdomain(side), spec_.alpha);
    } else {
      elliptic_[i].emplace(op_, subdomain(side));
    }
  }
  if (mode_ == IterationMode::Direct) {
    exact_ = exact_solution(spec_);
  } else {
    exact_.kind = spec_.kind;
    exact_.y = zero_;
    if (spec_.kind == ProblemKind::OCP) exact_.p = zero_;
  }
}

const Subdomain& SchwarzIteration::subdomain(Side side) const {
  return side == Side::Left ? spec_.decomposition.left : spec_.decomposition.right;
}

IterateState SchwarzIteration::initial_state() const {
  IterateState s;
  s.kind = spec_.kind;
  GridFunction y0 = initial_field(spec_.grid, spec_.init, spec_.seed);
  std::optional<GridFunction> p0;
  if (spec_.kind == ProblemKind::OCP) p0 = initial_field(spec_.grid, spec_.init, spec_.seed + 1);

  if (mode_ == IterationMode::Direct) {
    s.y = std::move(y0);
    s.p = std::move(p0);
    return s;
  }
  // E0 = exact - initial guess.
  const IterateState ex = exact_solution(spec_);
  s.y = ex.y - y0;
  if (p0) s.p = *ex.p - *p0;
  return s;
}

IterateState SchwarzIteration::half_step(const IterateState& state, Side side) const {
  if (state.kind != spec_.kind) throw std::invalid_argument("half_step: state kind does not match problem");
  const auto i = side_index(side);
  const bool homogeneous = mode_ == IterationMode::ErrorPropagation;
  IterateState next;
  next.kind = state.kind;
  next.sweep = side == Side::Left ? state.sweep + 1 : state.sweep;
  next.last = side;
  if (spec_.kind == ProblemKind::OCP) {
    if (!state.p) throw std::invalid_argument("half_step: OCP state lacks the adjoint");
    auto sol = homogeneous ? coupled_[i]->solve(zero_, zero_, state.y, *state.p)
                           : coupled_[i]->solve(spec_.f, spec_.y_d, state.y, *state.p);
    next.y = std::move(sol.y);
    next.p = std::move(sol.p);
  } else {
    next.y = elliptic_[i]->solve(homogeneous ? zero_ : spec_.f, state.y);
  }
  return next;
}

double SchwarzIteration::stopping_measure(const IterateState& error) const {
  return error_measure(error, spec_.alpha, MeritNorm::Vector);
}

SweepHistory SchwarzIteration::run() const { return run_from(initial_state()); }

SweepHistory SchwarzIteration::run_from(IterateState initial) const {
  SweepHistory h;
  h.spec = spec_;
  h.mode = mode_;
  h.exact = exact_;
  h.states.reserve(1 + 2 * static_cast<std::size_t>(spec_.max_sweeps));
  h.states.push_back(std::move(initial));

  if (stopping_measure(h.error(0)) <= spec_.tol) {
    h.converged = true;
    return h;
  }
  for (int k = 1; k <= spec_.max_sweeps; ++k) {
    h.states.push_back(half_step(h.states.back(), Side::Left));
    h.states.push_back(half_step(h.states.back(), Side::Right));
    if (stopping_measure(h.error(h.states.size() - 1)) <= spec_.tol) {
      h.converged = true;
      break;
    }
  }
  return h;
}

IterateState half_step(const IterateState& state, const Subdomain& sub, const ProblemSpec& spec,
                       IterationMode mode) {
  Side side;
  if (sub == spec.decomposition.left) {
    side = Side::Left;
  } else if (sub == spec.decomposition.right) {
    side = Side::Right;
  } else {
    throw std::invalid_argument("half_step: subdomain is not part of the decomposition");
  }
  return SchwarzIteration(spec, mode).half_step(state, side);
}

SweepHistory run(const ProblemSpec& spec, IterationMode mode) {
  return SchwarzIteration(spec, mode).run();
}

DominationPair run_domination_pair(const ProblemSpec& spec_ocp) {
  if (spec_ocp.kind != ProblemKind::OCP)
    throw std::invalid_argument("run_domination_pair needs an OCP problem");
  const SchwarzIteration ocp(spec_ocp, IterationMode::ErrorPropagation);
  DominationPair out;
  out.ocp = ocp.run();

  ProblemSpec bound_spec = spec_ocp;
  bound_spec.kind = ProblemKind::Elliptic;
  bound_spec.f = GridFunction(spec_ocp.grid);
  bound_spec.y_d = GridFunction(spec_ocp.grid);
  bound_spec.tol = 0.0;
  bound_spec.max_sweeps = out.ocp.sweeps_done();
  const SchwarzIteration bound(bound_spec, IterationMode::ErrorPropagation);

  const IterateState& e0 = out.ocp.states.front();
  IterateState xi0;
  xi0.kind = ProblemKind::Elliptic;
  xi0.y = merit_vector(e0.y, *e0.p, spec_ocp.alpha);
  out.bound = bound.run_from(std::move(xi0));
  return out;
}

}  // namespace schwarz_ocp
