#include "schwarz_ocp/saddle.hpp"

#include <Eigen/SparseCholesky>

namespace schwarz_ocp {

namespace {

double inf_norm(const SparseMatrix& a) {
  Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(a.rows());
  for (Eigen::Index c = 0; c < a.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(a, c); it; ++it) row_sums[it.row()] += std::abs(it.value());
  return row_sums.size() ? row_sums.maxCoeff() : 0.0;
}

double inf_norm(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

std::shared_ptr<const Eigen::SparseLU<SparseMatrix>> factor(const SparseMatrix& a) {
  auto lu = std::make_shared<Eigen::SparseLU<SparseMatrix>>();
  lu->analyzePattern(a);
  lu->factorize(a);
  if (lu->info() != Eigen::Success) throw SolverError("sparse LU factorization failed: " + lu->lastErrorMessage());
  return lu;
}

void check_residual(const SparseMatrix& a, double a_norm, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& b) {
  const double res = inf_norm(Eigen::VectorXd(a * x - b));
  const double scale = a_norm * inf_norm(x) + inf_norm(b);
  if (res > kResidualTolerance * scale)
    throw SolverError("direct solve residual " + std::to_string(res) + " exceeds tolerance");
}

void require_grid(const Grid& g, const GridFunction& z, const char* what) {
  if (!(z.grid() == g)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

Eigen::VectorXd gather(const GridFunction& z, const Subdomain& region) {
  const auto& idx = region.interior_indices();
  Eigen::VectorXd v(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t r = 0; r < idx.size(); ++r) v[static_cast<Eigen::Index>(r)] = z[idx[r]];
  return v;
}

void scatter(const Eigen::Ref<const Eigen::VectorXd>& v, const Subdomain& region, GridFunction& z) {
  const auto& idx = region.interior_indices();
  for (std::size_t r = 0; r < idx.size(); ++r) z[idx[r]] = v[static_cast<Eigen::Index>(r)];
}

}  // namespace

// ---------------------------------------------------------------------------

EllipticSolver::EllipticSolver(const StencilOperator& op, const Subdomain& region)
    : op_(op), region_(region), matrix_(op.interior_matrix(region)) {
  if (!(region.grid() == op.grid())) throw std::invalid_argument("EllipticSolver: grid mismatch");
  matrix_norm_ = inf_norm(matrix_);
  lu_ = factor(matrix_);
}

GridFunction EllipticSolver::solve(const GridFunction& rhs, const GridFunction& boundary_data) const {
  require_grid(op_.grid(), rhs, "solve_elliptic");
  require_grid(op_.grid(), boundary_data, "solve_elliptic");
  const Eigen::VectorXd b = gather(rhs, region_) + op_.boundary_lift(boundary_data, region_);
  const Eigen::VectorXd x = lu_->solve(b);
  check_residual(matrix_, matrix_norm_, x, b);
  GridFunction w = boundary_data;
  scatter(x, region_, w);
  return w;
}

GridFunction solve_elliptic(const StencilOperator& op, const Subdomain& region,
                            const GridFunction& rhs, const GridFunction& boundary_data) {
  return EllipticSolver(op, region).solve(rhs, boundary_data);
}

// ---------------------------------------------------------------------------

CoupledSystem assemble_coupled(const StencilOperator& op, const Subdomain& region, double alpha,
                               const GridFunction& f, const GridFunction& y_d,
                               const GridFunction& y_data, const GridFunction& p_data) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  for (const auto* z : {&f, &y_d, &y_data, &p_data}) require_grid(op.grid(), *z, "assemble_coupled");
  CoupledSystem sys;
  sys.op = op;
  sys.alpha = alpha;
  sys.region = region;
  sys.rhs_state = gather(f, region) + op.boundary_lift(y_data, region);
  sys.rhs_adjoint = -gather(y_d, region) + op.boundary_lift(p_data, region);
  sys.y_data = y_data;
  sys.p_data = p_data;
  return sys;
}

CoupledSolver::CoupledSolver(const StencilOperator& op, const Subdomain& region, double alpha)
    : op_(op), region_(region), alpha_(alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(region.grid() == op.grid())) throw std::invalid_argument("CoupledSolver: grid mismatch");

  const SparseMatrix l = op.interior_matrix(region);
  const Eigen::Index m = l.rows();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(2 * static_cast<std::size_t>(l.nonZeros()) + 2 * static_cast<std::size_t>(m));
  for (Eigen::Index c = 0; c < l.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(l, c); it; ++it) {
      trips.emplace_back(it.row(), it.col(), it.value());
      trips.emplace_back(it.row() + m, it.col() + m, it.value());
    }
  }
  for (Eigen::Index r = 0; r < m; ++r) {
    trips.emplace_back(r, r + m, 1.0 / alpha);
    trips.emplace_back(r + m, r, -1.0);
  }
  matrix_.resize(2 * m, 2 * m);
  matrix_.setFromTriplets(trips.begin(), trips.end());
  matrix_norm_ = inf_norm(matrix_);
  lu_ = factor(matrix_);
}

CoupledSolution CoupledSolver::solve(const CoupledSystem& sys) const {
  if (!(sys.region == region_) || sys.alpha != alpha_)
    throw std::invalid_argument("CoupledSolver: system does not match the factored region/alpha");
  const Eigen::Index m = sys.rhs_state.size();
  Eigen::VectorXd b(2 * m);
  b << sys.rhs_state, sys.rhs_adjoint;
  const Eigen::VectorXd x = lu_->solve(b);
  check_residual(matrix_, matrix_norm_, x, b);
  CoupledSolution out{sys.y_data, sys.p_data};
  scatter(x.head(m), region_, out.y);
  scatter(x.tail(m), region_, out.p);
  return out;
}

CoupledSolution CoupledSolver::solve(const GridFunction& f, const GridFunction& y_d,
                                     const GridFunction& y_data, const GridFunction& p_data) const {
  return solve(assemble_coupled(op_, region_, alpha_, f, y_d, y_data, p_data));
}

CoupledSolution solve_coupled(const CoupledSystem& sys) {
  return CoupledSolver(sys.op, sys.region, sys.alpha).solve(sys);
}

CoupledSolution solve_coupled_reduced(const StencilOperator& op, double alpha,
                                      const GridFunction& f, const GridFunction& y_d) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  require_grid(op.grid(), f, "solve_coupled_reduced");
  require_grid(op.grid(), y_d, "solve_coupled_reduced");
  const Subdomain whole = Subdomain::whole(op.grid());
  const SparseMatrix l = op.interior_matrix(whole);
  SparseMatrix identity(l.rows(), l.cols());
  identity.setIdentity();
  const SparseMatrix reduced = SparseMatrix(alpha * (l * l)) + identity;

  const Eigen::VectorXd f_i = gather(f, whole);
  const Eigen::VectorXd b = alpha * (l * f_i) + gather(y_d, whole);
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(reduced);
  if (ldlt.info() != Eigen::Success) throw SolverError("reduced-system factorization failed");
  const Eigen::VectorXd y_i = ldlt.solve(b);
  check_residual(reduced, inf_norm(reduced), y_i, b);
  const Eigen::VectorXd p_i = alpha * (f_i - l * y_i);

  CoupledSolution out{GridFunction(op.grid()), GridFunction(op.grid())};
  scatter(y_i, whole, out.y);
  scatter(p_i, whole, out.p);
  return out;
}

GridFunction recover_control(const GridFunction& p, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  GridFunction u(p.grid());
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p.grid().is_interior(k)) u[k] = -p[k] / alpha;
  return u;
}

}  // namespace schwarz_ocp
