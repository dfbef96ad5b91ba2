#pragma once

#include <Eigen/SparseCore>

#include "schwarz_ocp/model.hpp"

namespace schwarz_ocp {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// L_h = -Delta_h + c I with the 3-point (1D) or 5-point (2D) stencil.
/// The shift c acts on nodal values without h^2 scaling.
class StencilOperator {
 public:
  StencilOperator() = default;
  StencilOperator(const Grid& grid, double shift_c);

  const Grid& grid() const { return grid_; }
  double shift() const { return shift_; }

  double diagonal() const;                        // 2 dim / h^2 + c
  double neighbour_weight() const;                // -1 / h^2

  /// Stencil value at one point; the point must have all its neighbours.
  double apply_at(const GridFunction& z, std::size_t idx) const;

  /// L_h z at every interior point of the grid; boundary entries are 0.
  GridFunction apply(const GridFunction& z) const;

  /// L_h z at the interior points of `sub`, reading the subdomain boundary
  /// values (physical and artificial) from z; every other entry is 0.
  GridFunction apply_on_subdomain(const GridFunction& z, const Subdomain& sub) const;

  /// Matrix of L_h on the interior unknowns of `region`, in the order of
  /// region.interior_indices(). Boundary couplings are dropped (they go to
  /// the right-hand side).
  SparseMatrix interior_matrix(const Subdomain& region) const;

  /// Right-hand side contribution of known boundary values: for each region
  /// interior point, minus the sum of neighbour weights times boundary
  /// values of `data` on the region boundary.
  Eigen::VectorXd boundary_lift(const GridFunction& data, const Subdomain& region) const;

 private:
  Grid grid_;
  double shift_ = 0.0;
};

}  // namespace schwarz_ocp
