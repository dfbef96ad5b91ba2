#pragma once

#include <memory>
#include <stdexcept>

#include <Eigen/SparseLU>

#include "schwarz_ocp/fdm.hpp"

namespace schwarz_ocp {

/// Factorization failure or a residual check that did not hold.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Relative residual bound enforced after every direct solve.
inline constexpr double kResidualTolerance = 1e-10;

/// Factored L_h on the interior of one region; reusable across right-hand
/// sides. Immutable after construction, so one instance may serve several
/// threads.
class EllipticSolver {
 public:
  EllipticSolver(const StencilOperator& op, const Subdomain& region);

  const Subdomain& region() const { return region_; }

  /// Solves L_h W = rhs on the region interior with W = boundary_data on the
  /// region boundary. The result is a copy of boundary_data whose region
  /// interior values are replaced by the solution.
  GridFunction solve(const GridFunction& rhs, const GridFunction& boundary_data) const;

 private:
  StencilOperator op_;
  Subdomain region_;
  SparseMatrix matrix_;
  double matrix_norm_ = 0.0;
  std::shared_ptr<const Eigen::SparseLU<SparseMatrix>> lu_;
};

/// Block system [L_h, alpha^-1 I; -I, L_h] (Y_I; P~_I) = (rhs_state; rhs_adjoint)
/// on the interior of `region`, with the boundary values already moved to
/// the right-hand side.
struct CoupledSystem {
  StencilOperator op;
  double alpha = 1.0;
  Subdomain region;
  Eigen::VectorXd rhs_state;    // F_I + boundary lift of Y data
  Eigen::VectorXd rhs_adjoint;  // -Y_d,I + boundary lift of P~ data
  GridFunction y_data;          // boundary values of Y (values elsewhere are kept)
  GridFunction p_data;          // boundary values of P~
};

/// Builds the subdomain (or global) optimality system for source f and target y_d.
CoupledSystem assemble_coupled(const StencilOperator& op, const Subdomain& region, double alpha,
                               const GridFunction& f, const GridFunction& y_d,
                               const GridFunction& y_data, const GridFunction& p_data);

struct CoupledSolution {
  GridFunction y;
  GridFunction p;  // P~ = P / h^2
};

/// Factored block system for one (operator, region, alpha).
class CoupledSolver {
 public:
  CoupledSolver(const StencilOperator& op, const Subdomain& region, double alpha);

  const Subdomain& region() const { return region_; }
  double alpha() const { return alpha_; }

  CoupledSolution solve(const CoupledSystem& sys) const;
  CoupledSolution solve(const GridFunction& f, const GridFunction& y_d, const GridFunction& y_data,
                        const GridFunction& p_data) const;

 private:
  StencilOperator op_;
  Subdomain region_;
  double alpha_;
  SparseMatrix matrix_;
  double matrix_norm_ = 0.0;
  std::shared_ptr<const Eigen::SparseLU<SparseMatrix>> lu_;
};

/// One-shot helpers (factor, solve, discard).
GridFunction solve_elliptic(const StencilOperator& op, const Subdomain& region,
                            const GridFunction& rhs, const GridFunction& boundary_data);
CoupledSolution solve_coupled(const CoupledSystem& sys);

/// Global zero-boundary optimality system via the reduced form
/// (alpha L_h^2 + I) Y_I = alpha L_h F_I + Y_d,I, then P~_I = alpha (F_I - L_h Y_I).
/// An independent route to the same (Y, P~) as solve_coupled.
CoupledSolution solve_coupled_reduced(const StencilOperator& op, double alpha,
                                      const GridFunction& f, const GridFunction& y_d);

/// U_I = -P~_I / alpha, zero on the boundary.
GridFunction recover_control(const GridFunction& p, double alpha);

}  // namespace schwarz_ocp
