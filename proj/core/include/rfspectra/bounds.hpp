#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rfspectra/features.hpp"

namespace rfspectra {

/// Which bound or hypothesis set a report evaluates.
enum class TheoremId {
  thm1,
  thm2,
  thm3,
  thm4,
  thm5,
  thm6,
  bernstein,
  chi2,
  gershgorin,
  simplified_tail,
};

std::string theorem_name(TheoremId id);
TheoremId theorem_from_name(std::string_view name);

enum class ConditionDirection { geq, leq };

/// One hypothesis inequality: lhs (direction) rhs.
struct BoundCondition {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  ConditionDirection direction = ConditionDirection::geq;
  bool holds = false;  // boundary equality passes
};

/// Evaluation of one theorem: every hypothesis as explicit numbers with a
/// verdict, the conclusion bound, and every constant that produced a verdict.
struct BoundReport {
  TheoremId theorem_id = TheoremId::thm1;
  std::vector<BoundCondition> conditions;
  double conclusion_bound = 0.0;
  std::map<std::string, double> constants_used;

  bool all_conditions_hold() const;
  std::string to_json() const;
  std::string to_table() const;  // human-readable, for the CLI
};

/// Matrix Bernstein tail: min(1, 2N exp(-(t^2/2)/(variance_param + K t/3))).
/// `m` is the number of summands; it enters through the caller's
/// variance_param and is validated only.
double bernstein_tail(std::int64_t m, std::int64_t n, double k_bound,
                      double variance_param, double t);

/// Simplified Gram tail min(1, 2N exp(-m eta^2 / (5N + 9))): failure
/// probability bound for ||(1/m)A*A - E_x[(1/m)A*A]||_2 >= eta.
/// Requires N >= 9 (assumed by the simplification) and eta in (0,1).
double simplified_gram_tail(std::int64_t m, std::int64_t n, double eta);

/// Chi-square Chernoff bound (z e^{1-z})^{d/2} on P(||w||^2 <= z sigma^2 d),
/// for z in (0, 1].
double chi_square_chernoff(double z, std::int64_t d);

/// Underparameterized concentration (N <= m regime):
/// d >= C1 log(N/delta), gamma^2 sigma^2 >= 4 log(2N/eta),
/// m >= C2 eta^-2 N log(2N/delta), plus the side condition eta >= 2 delta.
/// Conclusion ||(1/m)A*A - I_N||_2 <= 2 eta with failure probability 5 delta.
BoundReport check_theorem1(std::int64_t d, std::int64_t m, std::int64_t n,
                           double gamma, double sigma, double delta,
                           double eta, double c1 = 1.0, double c2 = 1.0);

/// Overparameterized mirror of check_theorem1 under (m <-> N).
BoundReport check_theorem2(std::int64_t d, std::int64_t m, std::int64_t n,
                           double gamma, double sigma, double delta,
                           double eta, double c1 = 1.0, double c2 = 1.0);

/// Kernel concentration for separated data:
/// N >= C eta^-2 m log(2m/delta) and sigma^2 >= (2/R) log(m/eta), where R is
/// the minimum pairwise *squared* distance of the data. Conclusion
/// ||(1/N)AA* - K||_2 <= eta with failure probability delta.
BoundReport check_theorem3(std::int64_t n, std::int64_t m, double sigma,
                           double separation_r, double delta, double eta,
                           double c = 1.0);

/// Gram-to-conditional-expectation concentration for separated weights
/// (min pairwise squared distance >= R d):
/// m >= C eta^-2 N log(2N/delta) and gamma^2 >= (2/R) log(N/eta).
/// Conclusion ||(1/m)A*A - E_x[(1/m)A*A]||_2 <= eta, probability delta.
BoundReport check_theorem4(std::int64_t m, std::int64_t n, double gamma,
                           double separation_r, double delta, double eta,
                           double c = 6.0);

/// Separation of variance-1 subgaussian weights: d >= C t^-2 log(N/delta)
/// gives min pairwise squared distance >= (1-2t) d with probability 1-2delta.
BoundReport check_separation(std::int64_t d, std::int64_t n, double delta,
                             double t, double c = 1.0);

/// Conditional-expectation-to-identity concentration for subgaussian weights:
/// d >= C log(N/delta) and gamma^2 sigma^2 >= 4 log(2N/eta). Conclusion
/// ||E_x[(1/m)A*A] - I_N||_2 <= eta with probability 1-2delta; with
/// eta >= 2delta also ||E_x - E_{x,w}||_2 <= eta.
BoundReport check_theorem6(std::int64_t d, std::int64_t n, double gamma,
                           double sigma, double delta, double eta,
                           double c = 1.0);

/// max_j ( |M_jj| + sum_{k != j} |M_jk| ): eigenvalue-inclusion bound on
/// ||M||_2 for Hermitian M. Callers pass deviation matrices (M - I, M - E)
/// whose diagonal is ~0, where this is the max absolute off-diagonal row sum.
double gershgorin_bound(const HermitianMatrix& m);

}  // namespace rfspectra
