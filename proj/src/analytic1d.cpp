#include "schwarz_ocp/analytic1d.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace schwarz_ocp::analytic1d {

namespace {

// Above this argument sinh^2 z + sin^2 z equals e^{2z}/4 to double precision.
constexpr double kLargeArgument = 20.0;

void require_ordered(double r, double s) {
  if (!(0.0 < r && r < s && s < 1.0)) throw std::invalid_argument("need 0 < r < s < 1");
}

// log sinh(x) for x > 0.
double log_sinh(double x) {
  if (x > kLargeArgument) return x - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * x));
  return std::log(std::sinh(x));
}

}  // namespace

double gamma_of_alpha(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  return std::numbers::sqrt2 / 2.0 * std::pow(alpha, -0.25);
}

double Config::gamma() const { return gamma_of_alpha(alpha); }

void Config::validate() const {
  require_ordered(r, s);
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
}

double g(double z) {
  if (z < 0.0) throw std::invalid_argument("g(z) needs z >= 0");
  const double sh = std::sinh(z);
  const double sn = std::sin(z);
  return sh * sh + sn * sn;
}

double log_g(double z) {
  if (!(z > 0.0)) throw std::invalid_argument("log_g(z) needs z > 0");
  if (z > kLargeArgument) return 2.0 * z - std::log(4.0);
  return std::log(g(z));
}

double left_factor(double x, double s, double gamma) {
  if (!(0.0 <= x && x <= s)) throw std::invalid_argument("left_factor needs 0 <= x <= s");
  if (x == 0.0) return 0.0;
  return std::exp(log_g(gamma * x) - log_g(gamma * s));
}

double right_factor(double r, double x, double gamma) {
  if (!(r <= x && x <= 1.0)) throw std::invalid_argument("right_factor needs r <= x <= 1");
  if (x == 1.0) return 0.0;
  return std::exp(log_g(gamma * (1.0 - x)) - log_g(gamma * (1.0 - r)));
}

double rho_c_gamma(double r, double s, double gamma) {
  require_ordered(r, s);
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  return left_factor(r, s, gamma) * right_factor(r, s, gamma);
}

double rho_c(const Config& cfg) {
  cfg.validate();
  return rho_c_gamma(cfg.r, cfg.s, cfg.gamma());
}

double rho_e(double r, double s) {
  require_ordered(r, s);
  return r * (1.0 - s) / (s * (1.0 - r));
}

double rho_e_beta(double r, double s, double beta) {
  require_ordered(r, s);
  if (beta < 0.0) throw std::invalid_argument("beta must be nonnegative");
  if (beta == 0.0) return rho_e(r, s);
  const double log_rate = log_sinh(beta * r) + log_sinh(beta * (1.0 - s)) - log_sinh(beta * s) -
                          log_sinh(beta * (1.0 - r));
  return std::exp(log_rate);
}

std::vector<ScanPoint> rate_vs_gamma_scan(double r, double s, double gamma_lo, double gamma_hi,
                                          int count) {
  require_ordered(r, s);
  if (!(gamma_lo > 0.0 && gamma_hi > gamma_lo)) throw std::invalid_argument("need 0 < gamma_lo < gamma_hi");
  if (count < 2) throw std::invalid_argument("scan needs at least two samples");
  std::vector<ScanPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  const double a = std::log(gamma_lo);
  const double b = std::log(gamma_hi);
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    const double gamma = i == 0 ? gamma_lo : i == count - 1 ? gamma_hi : std::exp(a + t * (b - a));
    out.push_back({gamma, rho_c_gamma(r, s, gamma)});
  }
  return out;
}

Pairing better_estimate_pairing(double r, double s, double alpha) {
  const Config cfg{r, s, alpha};
  cfg.validate();
  const double beta = 2.0 * cfg.gamma();
  return {rho_c(cfg), rho_e_beta(r, s, beta)};
}

}  // namespace schwarz_ocp::analytic1d
