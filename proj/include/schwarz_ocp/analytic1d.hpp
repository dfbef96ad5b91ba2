#pragma once

#include <utility>
#include <vector>

// Closed-form convergence rates of the two-subdomain alternating Schwarz
// method on (0,1) with subdomains (0,s) and (r,1), 0 < r < s < 1.
namespace schwarz_ocp::analytic1d {

struct Config {
  double r = 0.4;
  double s = 0.6;
  double alpha = 1.0;

  /// (sqrt(2)/2) alpha^(-1/4)
  double gamma() const;
  void validate() const;
};

double gamma_of_alpha(double alpha);

/// sinh^2 z + sin^2 z, z >= 0.
double g(double z);
/// log g(z) for z > 0; finite for arbitrarily large z.
double log_g(double z);

/// L(x, s) = g(gamma x) / g(gamma s), x in [0, s].
double left_factor(double x, double s, double gamma);
/// R(r, x) = g(gamma (1-x)) / g(gamma (1-r)), x in [r, 1].
double right_factor(double r, double x, double gamma);

/// Merit contraction per sweep for the optimal control problem: L(r,s) R(r,s).
double rho_c(const Config& cfg);
double rho_c_gamma(double r, double s, double gamma);

/// Error contraction per sweep for -w'' = 0: r(1-s) / (s(1-r)).
double rho_e(double r, double s);

/// Contraction for -w'' + beta^2 w = 0; beta = 0 gives rho_e.
double rho_e_beta(double r, double s, double beta);

struct ScanPoint {
  double gamma;
  double rho_c;
};

/// rho_c sampled at `count` log-spaced gamma values in [gamma_lo, gamma_hi].
std::vector<ScanPoint> rate_vs_gamma_scan(double r, double s, double gamma_lo, double gamma_hi,
                                          int count);

struct Pairing {
  double rho_c;
  double rho_tilde;  // rho_e_beta at beta = sqrt(2) alpha^(-1/4)
};

Pairing better_estimate_pairing(double r, double s, double alpha);

}  // namespace schwarz_ocp::analytic1d
