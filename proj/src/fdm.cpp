#include "schwarz_ocp/fdm.hpp"

#include <unordered_map>

namespace schwarz_ocp {

namespace {

// Neighbour indices of an interior point: 2 in 1D, 4 in 2D.
template <typename F>
void for_each_neighbour(const Grid& g, std::size_t idx, F&& fn) {
  const int i = g.x_of(idx);
  const int j = g.y_of(idx);
  fn(g.index(i - 1, j));
  fn(g.index(i + 1, j));
  if (g.dim() == 2) {
    fn(g.index(i, j - 1));
    fn(g.index(i, j + 1));
  }
}

}  // namespace

StencilOperator::StencilOperator(const Grid& grid, double shift_c) : grid_(grid), shift_(shift_c) {
  if (!(shift_c >= 0.0)) throw std::invalid_argument("stencil shift c must be nonnegative");
}

double StencilOperator::diagonal() const {
  const double h = grid_.h();
  return 2.0 * grid_.dim() / (h * h) + shift_;
}

double StencilOperator::neighbour_weight() const {
  const double h = grid_.h();
  return -1.0 / (h * h);
}

double StencilOperator::apply_at(const GridFunction& z, std::size_t idx) const {
  double acc = 0.0;
  for_each_neighbour(grid_, idx, [&](std::size_t nb) { acc += z[nb]; });
  return diagonal() * z[idx] + neighbour_weight() * acc;
}

GridFunction StencilOperator::apply(const GridFunction& z) const {
  if (!(z.grid() == grid_)) throw std::invalid_argument("apply: grid mismatch");
  GridFunction out(grid_);
  for (std::size_t k = 0; k < z.size(); ++k)
    if (grid_.is_interior(k)) out[k] = apply_at(z, k);
  return out;
}

GridFunction StencilOperator::apply_on_subdomain(const GridFunction& z, const Subdomain& sub) const {
  if (!(z.grid() == grid_) || !(sub.grid() == grid_))
    throw std::invalid_argument("apply_on_subdomain: grid mismatch");
  GridFunction out(grid_);
  for (auto k : sub.interior_indices()) out[k] = apply_at(z, k);
  return out;
}

SparseMatrix StencilOperator::interior_matrix(const Subdomain& region) const {
  const auto& idx = region.interior_indices();
  std::unordered_map<std::size_t, Eigen::Index> local;
  local.reserve(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) local.emplace(idx[r], static_cast<Eigen::Index>(r));

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(idx.size() * (1 + 2 * grid_.dim()));
  const double w = neighbour_weight();
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const auto row = static_cast<Eigen::Index>(r);
    trips.emplace_back(row, row, diagonal());
    for_each_neighbour(grid_, idx[r], [&](std::size_t nb) {
      if (auto it = local.find(nb); it != local.end()) trips.emplace_back(row, it->second, w);
    });
  }
  const auto m = static_cast<Eigen::Index>(idx.size());
  SparseMatrix a(m, m);
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

Eigen::VectorXd StencilOperator::boundary_lift(const GridFunction& data, const Subdomain& region) const {
  const auto& idx = region.interior_indices();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(idx.size()));
  const double w = neighbour_weight();
  for (std::size_t r = 0; r < idx.size(); ++r) {
    double acc = 0.0;
    for_each_neighbour(grid_, idx[r], [&](std::size_t nb) {
      if (!region.contains_interior(nb)) acc += data[nb];
    });
    b[static_cast<Eigen::Index>(r)] = -w * acc;
  }
  return b;
}

}  // namespace schwarz_ocp
