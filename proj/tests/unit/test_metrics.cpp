#include <cmath>
#include <random>

#include "doctest.h"
#include "schwarz_ocp/metrics.hpp"

using namespace schwarz_ocp;

namespace {

GridFunction random_field(const Grid& g, std::uint64_t seed, bool with_boundary = true) {
  std::mt19937_64 gen(seed);
  GridFunction z(g);
  for (std::size_t k = 0; k < z.size(); ++k) {
    const double v = static_cast<double>(gen() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    if (with_boundary || g.is_interior(k)) z[k] = v;
  }
  return z;
}

}  // namespace

TEST_CASE("merit vector and norms") {
  const Grid g = build_grid(1, 4);
  const GridFunction ey(g, std::vector<double>{0, 1, -2, 0.5, 0});
  const GridFunction ep(g, std::vector<double>{0, 0.1, 0, -0.3, 0});
  const double alpha = 0.01;
  const GridFunction m = merit_vector(ey, ep, alpha);
  CHECK(m[1] == doctest::Approx(2.0));
  CHECK(m[2] == doctest::Approx(4.0));
  CHECK(m[3] == doctest::Approx(9.25));
  CHECK(max_norm(m) == doctest::Approx(9.25));
  CHECK(split_merit_norm(ey, ep, alpha) == doctest::Approx(4.0 + 9.0));
  CHECK(split_merit_norm(ey, ep, alpha) >= max_norm(m));
  CHECK(discrete_l2_merit(m) == doctest::Approx(0.25 * (2.0 + 4.0 + 9.25)));
  CHECK_THROWS_AS(merit_vector(ey, ep, 0.0), std::invalid_argument);
}

TEST_CASE("merit norm parsing") {
  CHECK(parse_merit_norm("split") == MeritNorm::Split);
  CHECK(parse_merit_norm("vector") == MeritNorm::Vector);
  CHECK_THROWS_AS(parse_merit_norm("l2"), std::invalid_argument);
}

TEST_CASE("extract_rates takes ratios of consecutive errors") {
  ProblemSpec spec = make_problem(ProblemKind::Elliptic, build_grid(2, 16), 1.0, 1);
  spec.tol = 0.0;
  spec.max_sweeps = 4;
  const SweepHistory h = run(spec);
  const ConvergenceRecord rec = extract_rates(h);
  REQUIRE(rec.entries.size() == 4);
  CHECK_FALSE(rec.entries[0].rate.has_value());
  for (int k = 2; k <= 4; ++k)
    CHECK(*rec.entry(k)->rate == doctest::Approx(rec.entry(k)->error / rec.entry(k - 1)->error));
  CHECK(rec.entry(1)->error == doctest::Approx(max_norm(h.error_after_sweep(1).y)));
  CHECK(rec.entry(7) == nullptr);
  CHECK(rec.delta == 1);
  CHECK(rec.n == 16);
}

TEST_CASE("maximum principle holds on sign-definite solves") {
  int passed = 0;
  for (std::uint64_t seed = 0; seed < 24; ++seed) {
    const int n = 4 << (seed % 3);
    const Grid g = build_grid(2, n);
    const StencilOperator op(g, (seed % 2) ? 0.0 : 10.0);
    GridFunction rhs = random_field(g, seed, false);
    for (auto& v : rhs.values()) v = -std::abs(v);
    const Subdomain s(g, 0, n / 2 + 1);
    const GridFunction z = solve_elliptic(op, s, (seed % 4 < 2) ? rhs : -1.0 * rhs, random_field(g, seed + 100));
    const Verdict v = check_max_principle(op, z, s);
    if (v.passed()) ++passed;
  }
  CHECK(passed == 24);
}

TEST_CASE("maximum principle rejects non-sign-definite input") {
  const Grid g = build_grid(2, 8);
  const StencilOperator op(g, 0.0);
  const Verdict v = check_max_principle(op, random_field(g, 1));
  CHECK(v.status == Verdict::Status::HypothesisNotSatisfied);
  CHECK(v.ok());
  CHECK_FALSE(v.passed());
  CHECK_THROWS_AS(check_max_principle(op, GridFunction(build_grid(2, 4))), std::invalid_argument);
}

TEST_CASE("lemma inequality on homogeneous coupled solves") {
  int passed = 0;
  for (std::uint64_t seed = 0; seed < 21; ++seed) {
    const int n = 4 << (seed % 3);
    const double alpha = std::pow(10.0, -static_cast<double>(seed % 4) * 2.0);
    const Grid g = build_grid(2, n);
    const StencilOperator op(g, 0.0);
    const Decomposition d = build_decomposition(g, 1);
    const GridFunction zero(g);
    const CoupledSolution sol = solve_coupled(
        assemble_coupled(op, d.right, alpha, zero, zero, random_field(g, seed), random_field(g, seed + 50)));
    const Verdict v = check_lemma_inequality(op, sol.y, sol.p, 1.0 / alpha, d.right);
    if (v.passed()) ++passed;
  }
  CHECK(passed == 21);
}

TEST_CASE("lemma checker rejects inputs that miss the hypothesis") {
  const Grid g = build_grid(2, 8);
  const StencilOperator op(g, 0.0);
  const Verdict v = check_lemma_inequality(op, random_field(g, 1), random_field(g, 2), 1.0);
  CHECK(v.status == Verdict::Status::HypothesisNotSatisfied);
  CHECK(v.ok());
  CHECK_FALSE(v.passed());
}

TEST_CASE("domination holds on random OCP runs and catches tampering") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ProblemSpec spec = make_problem(ProblemKind::OCP, build_grid(2, 16), std::pow(10.0, -2.0 * (seed % 3)),
                                    1 + static_cast<int>(seed % 3));
    spec.init = InitPolicy::Random;
    spec.seed = seed;
    spec.tol = 0.0;
    spec.max_sweeps = 3;
    DominationPair pair = run_domination_pair(spec);
    CHECK(check_domination(pair).passed());
    if (seed == 0) {
      pair.bound.states[3].y *= 0.0;
      const Verdict v = check_domination(pair);
      CHECK(v.status == Verdict::Status::Violation);
      CHECK(v.detail.find("half-step 3") != std::string::npos);
    }
  }
}
