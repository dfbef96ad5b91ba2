#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "schwarz_ocp/analytic1d.hpp"

using namespace schwarz_ocp::analytic1d;

TEST_CASE("g and its closed forms") {
  CHECK(g(0.0) == 0.0);
  for (double z : {0.5, 1.0, 2.0}) CHECK(g(z) >= z * z);
  const double z = 3.0;
  CHECK(g(z) == doctest::Approx((std::cosh(2 * z) - std::cos(2 * z)) / 2).epsilon(1e-12));
  CHECK(log_g(25.0) == doctest::Approx(std::log(g(25.0))).epsilon(1e-12));
  CHECK(std::isfinite(log_g(500.0)));
  CHECK_THROWS_AS(g(-1.0), std::invalid_argument);
}

TEST_CASE("gamma from alpha") {
  CHECK(gamma_of_alpha(1.0) == doctest::Approx(std::numbers::sqrt2 / 2));
  CHECK(gamma_of_alpha(1e-6) == doctest::Approx(22.3607).epsilon(1e-5));
  CHECK(Config{0.4, 0.6, 1e-8}.gamma() == doctest::Approx(70.7107).epsilon(1e-5));
}

TEST_CASE("rho_e values and limits") {
  CHECK(rho_e(0.4, 0.6) == doctest::Approx(4.0 / 9.0));
  CHECK(rho_e(0.25, 0.75) == doctest::Approx(1.0 / 9.0));
  CHECK(rho_e(0.5, 0.5 + 1e-9) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(rho_e(0.6, 0.4), std::invalid_argument);
}

TEST_CASE("rho_c limits and symmetry") {
  const double re = rho_e(0.4, 0.6);
  CHECK(rho_c_gamma(0.4, 0.6, 1e-4) == doctest::Approx(re * re).epsilon(1e-6));
  CHECK(rho_c_gamma(0.4, 0.6, 1e-4) == doctest::Approx(0.1975).epsilon(1e-3));
  const double l = left_factor(0.3, 0.7, 2.0);
  const double r = right_factor(0.3, 0.7, 2.0);
  CHECK(l == doctest::Approx(r));
  CHECK(rho_c_gamma(0.3, 0.7, 2.0) == doctest::Approx(l * l));
  const double alpha = 1e-6;
  const double asym = std::exp(2 * std::numbers::sqrt2 * std::pow(alpha, -0.25) * (0.4 - 0.6));
  CHECK(rho_c({0.4, 0.6, alpha}) == doctest::Approx(asym).epsilon(0.05));
  CHECK(std::isfinite(rho_c({0.4, 0.6, 1e-12})));
}

TEST_CASE("rho_c is below rho_e squared") {
  for (double r : {0.1, 0.3, 0.45})
    for (double s : {0.55, 0.7, 0.9})
      for (double alpha : {1e4, 1.0, 1e-2, 1e-6, 1e-8}) {
        const double rc = rho_c({r, s, alpha});
        const double re = rho_e(r, s);
        CHECK(rc > 0.0);
        CHECK(rc < 1.0);
        CHECK(rc < re);
        CHECK(rc <= re * re * (1 + 1e-12));
      }
}

TEST_CASE("left and right factors") {
  const double gamma = 3.0;
  CHECK(left_factor(0.6, 0.6, gamma) == doctest::Approx(1.0));
  CHECK(right_factor(0.4, 0.4, gamma) == doctest::Approx(1.0));
  CHECK(left_factor(0.0, 0.6, gamma) == 0.0);
  CHECK(right_factor(0.4, 1.0, gamma) == 0.0);
  double prev_l = -1.0, prev_r = 2.0;
  for (int i = 0; i <= 20; ++i) {
    const double x = (40 + i) / 100.0;
    CHECK(left_factor(x, 0.6, gamma) > prev_l);
    CHECK(right_factor(0.4, x, gamma) < prev_r);
    prev_l = left_factor(x, 0.6, gamma);
    prev_r = right_factor(0.4, x, gamma);
  }
}

TEST_CASE("rho_e_beta") {
  CHECK(rho_e_beta(0.4, 0.6, 0.0) == doctest::Approx(rho_e(0.4, 0.6)));
  CHECK(rho_e_beta(0.4, 0.6, 1e-6) == doctest::Approx(rho_e(0.4, 0.6)).epsilon(1e-9));
  CHECK(rho_e_beta(0.4, 0.6, 1.0) < rho_e(0.4, 0.6));
  CHECK(rho_e_beta(0.4, 0.6, 50.0) == doctest::Approx(std::exp(2 * 50.0 * (0.4 - 0.6))).epsilon(0.05));
  CHECK(std::isfinite(rho_e_beta(0.4, 0.6, 2000.0)));
}

TEST_CASE("gamma scan") {
  const auto scan = rate_vs_gamma_scan(0.4, 0.6, 1e-2, 100.0, 64);
  CHECK(scan.size() == 64);
  CHECK(scan.front().gamma == 1e-2);
  CHECK(scan.back().gamma == 100.0);
  for (std::size_t i = 1; i < scan.size(); ++i) CHECK(scan[i].rho_c < scan[i - 1].rho_c);
  CHECK(scan.front().rho_c == doctest::Approx(std::pow(4.0 / 9.0, 2)).epsilon(1e-6));
  CHECK(scan.back().rho_c < 1e-15);
  CHECK(rate_vs_gamma_scan(0.4, 0.6, 1.0, 2.0, 2).size() == 2);
  CHECK_THROWS_AS(rate_vs_gamma_scan(0.4, 0.6, 1.0, 2.0, 1), std::invalid_argument);
}

TEST_CASE("better-estimate pairing") {
  const Pairing small = better_estimate_pairing(0.4, 0.6, 1e-8);
  CHECK(std::abs(small.rho_c / small.rho_tilde - 1.0) <= 0.05);
  const Pairing large = better_estimate_pairing(0.4, 0.6, 1e4);
  CHECK(std::abs(large.rho_c / (large.rho_tilde * large.rho_tilde) - 1.0) <= 0.05);
  for (double a : {1e-8, 1e-2, 1.0, 1e4}) {
    const Pairing p = better_estimate_pairing(0.4, 0.6, a);
    CHECK(p.rho_c > 0.0);
    CHECK(p.rho_c < 1.0);
    CHECK(p.rho_tilde > 0.0);
    CHECK(p.rho_tilde < 1.0);
  }
}
