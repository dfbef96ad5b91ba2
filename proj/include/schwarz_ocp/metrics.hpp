#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "schwarz_ocp/schwarz.hpp"

namespace schwarz_ocp {

// Checker tolerances. They reflect direct-solver accuracy and are applied
// relative to the natural magnitude of the quantity being checked.
inline constexpr double kSignTolerance = 1e-12;       // L_h Z <= 0 / >= 0 test
inline constexpr double kMaxPrincipleSlack = 1e-10;   // max Z <= max(0, max Z_boundary)
inline constexpr double kLemmaHypothesisTol = 1e-9;   // L Psi = -beta Phi, L Phi = Psi
inline constexpr double kLemmaInequalitySlack = 1e-8; // L (Psi^2 + beta Phi^2) <= 0
inline constexpr double kDominationSlack = 1e-9;      // E <= Xi

/// Componentwise E_y^2 + alpha^-1 E_p~^2.
GridFunction merit_vector(const GridFunction& e_y, const GridFunction& e_p, double alpha);

double max_norm(std::span<const double> z);
inline double max_norm(const GridFunction& z) { return max_norm(z.values()); }

/// ||E_y||_inf^2 + alpha^-1 ||E_p~||_inf^2. Never smaller than
/// max_norm(merit_vector(...)); this is the quantity tabulated for the
/// optimal control problem.
double split_merit_norm(const GridFunction& e_y, const GridFunction& e_p, double alpha);

/// h^dim times the sum of the entries of a merit vector.
double discrete_l2_merit(const GridFunction& merit);

enum class MeritNorm {
  Split,   // split_merit_norm
  Vector,  // max_norm(merit_vector)
};

std::string_view to_string(MeritNorm n);
MeritNorm parse_merit_norm(std::string_view s);

struct RateEntry {
  int k = 0;
  double error = 0.0;
  std::optional<double> rate;  // error[k] / error[k-1], from k = 2
};

struct ConvergenceRecord {
  ProblemKind kind = ProblemKind::OCP;
  double alpha = 0.0;
  int delta = 0;
  int n = 0;
  int dim = 2;
  double shift_c = 0.0;
  OverlapConvention convention = OverlapConvention::ExtendBoth;
  InitPolicy init = InitPolicy::Ones;
  std::uint64_t seed = 0;
  MeritNorm norm = MeritNorm::Split;
  std::vector<RateEntry> entries;
  bool converged = false;

  const RateEntry* entry(int k) const;
};

/// Error measure of an error state: max |E| for the elliptic kinds, the
/// chosen merit norm for OCP.
double error_measure(const IterateState& error, double alpha, MeritNorm norm);

/// One entry per completed sweep k = 1, 2, ...
ConvergenceRecord extract_rates(const SweepHistory& history, MeritNorm norm = MeritNorm::Split);

struct Verdict {
  enum class Status { Pass, HypothesisNotSatisfied, Violation };
  Status status = Status::Pass;
  std::optional<std::size_t> witness;  // offending grid index
  double magnitude = 0.0;              // size of the violation
  std::string detail;

  /// Pass or vacuous (hypothesis not satisfied); only Violation fails.
  bool ok() const { return status != Status::Violation; }
  bool passed() const { return status == Status::Pass; }
};

std::string_view to_string(Verdict::Status s);

/// Discrete maximum principle on a region: if L_h Z <= 0 on the region
/// interior then max Z <= max(0, max of Z on the region boundary), and the
/// mirrored statement for L_h Z >= 0. Non sign-definite input gives
/// HypothesisNotSatisfied.
Verdict check_max_principle(const StencilOperator& op, const GridFunction& z,
                            const std::optional<Subdomain>& region = std::nullopt);

/// Componentwise L_h(Psi^2 + beta Phi^2) <= 0 on the region interior,
/// provided L_h Psi = -beta Phi and L_h Phi = Psi hold there (checked first;
/// a failure is reported as HypothesisNotSatisfied).
Verdict check_lemma_inequality(const StencilOperator& op, const GridFunction& psi,
                               const GridFunction& phi, double beta,
                               const std::optional<Subdomain>& region = std::nullopt);

/// Componentwise E^(j) <= Xi^(j) + slack for every recorded half-step j.
Verdict check_domination(const DominationPair& pair, double slack = kDominationSlack);

}  // namespace schwarz_ocp
