#include <cmath>
#include <numbers>
#include <random>

#include "dense_oracle.hpp"
#include "doctest.h"
#include "schwarz_ocp/saddle.hpp"

using namespace schwarz_ocp;

namespace {

GridFunction random_field(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  GridFunction z(g);
  for (auto& v : z.values()) v = static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5;
  return z;
}

}  // namespace

TEST_CASE("stencil coefficients") {
  const StencilOperator op2(build_grid(2, 4), 3.0);
  CHECK(op2.diagonal() == doctest::Approx(4.0 * 16.0 + 3.0));
  CHECK(op2.neighbour_weight() == doctest::Approx(-16.0));
  const StencilOperator op1(build_grid(1, 4), 0.0);
  CHECK(op1.diagonal() == doctest::Approx(32.0));
}

TEST_CASE("apply annihilates linear functions and leaves the boundary at zero") {
  const Grid g = build_grid(2, 8);
  const StencilOperator op(g, 0.0);
  GridFunction z(g);
  for (std::size_t k = 0; k < z.size(); ++k) z[k] = 1.0 + 2.0 * g.x_of(k) * g.h() - 3.0 * g.y_of(k) * g.h();
  const GridFunction lz = op.apply(z);
  for (std::size_t k = 0; k < z.size(); ++k) CHECK(std::abs(lz[k]) < 1e-10);
}

TEST_CASE("interior matrix is an M-matrix with the stencil pattern") {
  const Grid g = build_grid(2, 6);
  const StencilOperator op(g, 0.5);
  const Subdomain s(g, 0, 4);
  const SparseMatrix a = op.interior_matrix(s);
  CHECK(a.rows() == static_cast<long>(s.interior_count()));
  bool strictly_dominant_row = false;
  for (int col = 0; col < a.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(a, col); it; ++it) {
      if (it.row() == it.col()) {
        CHECK(it.value() > 0.0);
      } else {
        CHECK(it.value() < 0.0);
      }
    }
  }
  const Eigen::MatrixXd dense(a);
  CHECK((dense - dense.transpose()).norm() == 0.0);
  for (int r = 0; r < dense.rows(); ++r) {
    double off = 0.0;
    for (int c = 0; c < dense.cols(); ++c)
      if (c != r) off += std::abs(dense(r, c));
    CHECK(dense(r, r) >= off);
    if (dense(r, r) > off + 1e-9) strictly_dominant_row = true;
    CHECK((dense.row(r).array() != 0.0).count() <= 5);
  }
  CHECK(strictly_dominant_row);
}

TEST_CASE("interior matrix matches the dense oracle assembly") {
  for (int dim : {1, 2}) {
    const Grid g = build_grid(dim, 6);
    const StencilOperator op(g, 1.5);
    const Subdomain s(g, 2, 6);
    const oracle::BoxProblem box{dim, 6, 2, 6, 1.5};
    const GridFunction zero(g);
    auto [dense, rhs] = oracle::assemble(box, std::vector<double>(g.point_count()), std::vector<double>(g.point_count()));
    const Eigen::MatrixXd a(op.interior_matrix(s));
    REQUIRE(static_cast<std::size_t>(a.rows()) == dense.n);
    for (std::size_t i = 0; i < dense.n; ++i)
      for (std::size_t j = 0; j < dense.n; ++j) CHECK(a(i, j) == doctest::Approx(dense(i, j)));
  }
}

TEST_CASE("boundary lift carries the known neighbours") {
  const Grid g = build_grid(2, 6);
  const StencilOperator op(g, 0.0);
  const Subdomain s(g, 0, 3);
  const GridFunction data = random_field(g, 3);
  const Eigen::VectorXd lift = op.boundary_lift(data, s);
  const oracle::BoxProblem box{2, 6, 0, 3, 0.0};
  std::vector<double> d(data.values().begin(), data.values().end());
  auto [dense, rhs] = oracle::assemble(box, std::vector<double>(g.point_count()), d);
  REQUIRE(static_cast<std::size_t>(lift.size()) == rhs.size());
  for (std::size_t k = 0; k < rhs.size(); ++k) CHECK(lift[static_cast<long>(k)] == doctest::Approx(rhs[k]));
}

TEST_CASE("apply_on_subdomain agrees with apply inside the region") {
  const Grid g = build_grid(2, 8);
  const StencilOperator op(g, 2.0);
  const Subdomain s(g, 3, 8);
  const GridFunction z = random_field(g, 11);
  const GridFunction full = op.apply(z);
  const GridFunction part = op.apply_on_subdomain(z, s);
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (s.contains_interior(k)) {
      CHECK(part[k] == full[k]);
    } else {
      CHECK(part[k] == 0.0);
    }
  }
}

TEST_CASE("second-order accuracy of the Poisson discretization") {
  auto error_at = [](int n) {
    const Grid g = build_grid(2, n);
    const StencilOperator op(g, 0.0);
    const GridFunction f = sample_function(g, AnalyticField::SinSinSource);
    const GridFunction exact = sample_function(g, AnalyticField::SinSinTarget);
    const GridFunction u = solve_elliptic(op, Subdomain::whole(g), f, GridFunction(g));
    double e = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) e = std::max(e, std::abs(u[k] - exact[k]));
    return e;
  };
  const double e32 = error_at(32);
  const double e64 = error_at(64);
  CHECK(e32 < 2e-3);
  CHECK(e32 / e64 == doctest::Approx(4.0).epsilon(0.02));
}
