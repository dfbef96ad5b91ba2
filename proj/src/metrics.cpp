#include "schwarz_ocp/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace schwarz_ocp {

GridFunction merit_vector(const GridFunction& e_y, const GridFunction& e_p, double alpha) {
  require_same_grid(e_y, e_p, "merit_vector");
  if (!(alpha > 0.0)) throw std::invalid_argument("merit_vector: alpha must be positive");
  GridFunction m(e_y.grid());
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = e_y[k] * e_y[k] + e_p[k] * e_p[k] / alpha;
  return m;
}

double max_norm(std::span<const double> z) {
  double m = 0.0;
  for (double v : z) m = std::max(m, std::abs(v));
  return m;
}

double split_merit_norm(const GridFunction& e_y, const GridFunction& e_p, double alpha) {
  require_same_grid(e_y, e_p, "split_merit_norm");
  if (!(alpha > 0.0)) throw std::invalid_argument("split_merit_norm: alpha must be positive");
  const double y = max_norm(e_y);
  const double p = max_norm(e_p);
  return y * y + p * p / alpha;
}

double discrete_l2_merit(const GridFunction& merit) {
  const double weight = std::pow(merit.grid().h(), merit.grid().dim());
  double sum = 0.0;
  for (double v : merit.values()) sum += v;
  return weight * sum;
}

std::string_view to_string(MeritNorm n) { return n == MeritNorm::Split ? "split" : "vector"; }

MeritNorm parse_merit_norm(std::string_view s) {
  if (s == "split") return MeritNorm::Split;
  if (s == "vector") return MeritNorm::Vector;
  throw std::invalid_argument("unknown merit norm '" + std::string(s) + "'");
}

const RateEntry* ConvergenceRecord::entry(int k) const {
  for (const auto& e : entries)
    if (e.k == k) return &e;
  return nullptr;
}

double error_measure(const IterateState& error, double alpha, MeritNorm norm) {
  if (error.kind != ProblemKind::OCP) return max_norm(error.y);
  if (!error.p) throw std::invalid_argument("error_measure: OCP error lacks the adjoint part");
  return norm == MeritNorm::Split ? split_merit_norm(error.y, *error.p, alpha)
                                  : max_norm(merit_vector(error.y, *error.p, alpha));
}

ConvergenceRecord extract_rates(const SweepHistory& history, MeritNorm norm) {
  const ProblemSpec& spec = history.spec;
  ConvergenceRecord rec;
  rec.kind = spec.kind;
  rec.alpha = spec.alpha;
  rec.delta = spec.decomposition.delta;
  rec.n = spec.grid.n();
  rec.dim = spec.grid.dim();
  rec.shift_c = spec.shift_c;
  rec.convention = spec.decomposition.convention;
  rec.init = spec.init;
  rec.seed = spec.seed;
  rec.norm = norm;
  rec.converged = history.converged;

  double previous = 0.0;
  for (int k = 1; k <= history.sweeps_done(); ++k) {
    RateEntry e;
    e.k = k;
    e.error = error_measure(history.error_after_sweep(k), spec.alpha, norm);
    if (k >= 2) e.rate = previous > 0.0 ? e.error / previous : 0.0;
    previous = e.error;
    rec.entries.push_back(e);
  }
  return rec;
}

// ---------------------------------------------------------------------------
// Checkers

std::string_view to_string(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::Pass: return "pass";
    case Verdict::Status::HypothesisNotSatisfied: return "hypothesis not satisfied";
    case Verdict::Status::Violation: return "violation";
  }
  return "?";
}

namespace {

struct RegionView {
  std::vector<std::size_t> interior;
  std::vector<std::size_t> boundary;
};

RegionView view_of(const Grid& grid, const std::optional<Subdomain>& region) {
  const Subdomain sub = region ? *region : Subdomain::whole(grid);
  if (!(sub.grid() == grid)) throw std::invalid_argument("checker: region grid mismatch");
  RegionView v;
  v.interior = sub.interior_indices();
  for (std::size_t k = 0; k < grid.point_count(); ++k)
    if (sub.contains(k) && !sub.contains_interior(k)) v.boundary.push_back(k);
  return v;
}

}  // namespace

Verdict check_max_principle(const StencilOperator& op, const GridFunction& z,
                            const std::optional<Subdomain>& region) {
  if (!(z.grid() == op.grid())) throw std::invalid_argument("check_max_principle: grid mismatch");
  const RegionView v = view_of(op.grid(), region);
  const double scale = std::max(1.0, max_norm(z));
  const double sign_tol = kSignTolerance * op.diagonal() * scale;
  const double slack = kMaxPrincipleSlack * scale;

  bool nonpositive = true;
  bool nonnegative = true;
  for (auto k : v.interior) {
    const double lz = op.apply_at(z, k);
    if (lz > sign_tol) nonpositive = false;
    if (lz < -sign_tol) nonnegative = false;
  }
  Verdict out;
  if (!nonpositive && !nonnegative) {
    out.status = Verdict::Status::HypothesisNotSatisfied;
    out.detail = "L_h Z is not sign-definite";
    return out;
  }

  double bmax = 0.0;
  double bmin = 0.0;
  for (auto k : v.boundary) {
    bmax = std::max(bmax, z[k]);
    bmin = std::min(bmin, z[k]);
  }
  for (auto k : v.interior) {
    if (nonpositive && z[k] > bmax + slack && z[k] - bmax > out.magnitude) {
      out.status = Verdict::Status::Violation;
      out.witness = k;
      out.magnitude = z[k] - bmax;
      out.detail = "interior maximum exceeds max(0, boundary maximum)";
    }
    if (nonnegative && z[k] < bmin - slack && bmin - z[k] > out.magnitude) {
      out.status = Verdict::Status::Violation;
      out.witness = k;
      out.magnitude = bmin - z[k];
      out.detail = "interior minimum below min(0, boundary minimum)";
    }
  }
  return out;
}

Verdict check_lemma_inequality(const StencilOperator& op, const GridFunction& psi,
                               const GridFunction& phi, double beta,
                               const std::optional<Subdomain>& region) {
  require_same_grid(psi, phi, "check_lemma_inequality");
  if (!(psi.grid() == op.grid())) throw std::invalid_argument("check_lemma_inequality: grid mismatch");
  if (!(beta > 0.0)) throw std::invalid_argument("check_lemma_inequality: beta must be positive");
  const RegionView v = view_of(op.grid(), region);
  const double d = op.diagonal();
  const double psi_max = max_norm(psi);
  const double phi_max = max_norm(phi);

  Verdict out;
  // Hypothesis, relative to the size of the terms being balanced.
  const double tol1 = kLemmaHypothesisTol * std::max(d * psi_max + beta * phi_max, 1e-300);
  const double tol2 = kLemmaHypothesisTol * std::max(d * phi_max + psi_max, 1e-300);
  for (auto k : v.interior) {
    const double r1 = std::abs(op.apply_at(psi, k) + beta * phi[k]);
    const double r2 = std::abs(op.apply_at(phi, k) - psi[k]);
    const double excess = std::max(r1 - tol1, r2 - tol2);
    if (excess > 0.0 && excess > out.magnitude) {
      out.status = Verdict::Status::HypothesisNotSatisfied;
      out.witness = k;
      out.magnitude = excess;
      out.detail = "coupled hypothesis L Psi = -beta Phi, L Phi = Psi does not hold";
    }
  }
  if (out.status != Verdict::Status::Pass) return out;

  GridFunction combined(psi.grid());
  for (std::size_t k = 0; k < combined.size(); ++k) combined[k] = psi[k] * psi[k] + beta * phi[k] * phi[k];
  const double slack = kLemmaInequalitySlack * d * max_norm(combined);
  for (auto k : v.interior) {
    const double value = op.apply_at(combined, k);
    if (value > slack && value > out.magnitude) {
      out.status = Verdict::Status::Violation;
      out.witness = k;
      out.magnitude = value;
      out.detail = "L_h(Psi^2 + beta Phi^2) > 0";
    }
  }
  return out;
}

Verdict check_domination(const DominationPair& pair, double slack) {
  Verdict out;
  const std::size_t count = std::min(pair.ocp.states.size(), pair.bound.states.size());
  if (pair.ocp.states.size() != pair.bound.states.size()) {
    out.status = Verdict::Status::HypothesisNotSatisfied;
    out.detail = "histories have different lengths";
    return out;
  }
  const double alpha = pair.ocp.spec.alpha;
  for (std::size_t j = 0; j < count; ++j) {
    const IterateState e = pair.ocp.error(j);
    const GridFunction merit = merit_vector(e.y, *e.p, alpha);
    const GridFunction xi = pair.bound.error(j).y;
    for (std::size_t k = 0; k < merit.size(); ++k) {
      const double excess = merit[k] - xi[k];
      if (excess > slack && excess > out.magnitude) {
        out.status = Verdict::Status::Violation;
        out.witness = k;
        out.magnitude = excess;
        out.detail = "merit vector exceeds the elliptic bound at half-step " + std::to_string(j);
      }
    }
  }
  return out;
}

}  // namespace schwarz_ocp
