#pragma once

#include "adelic/gabor_real.hpp"
#include "adelic/separable.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace adelic {

/// phi_alpha(Q) x phi_beta(Q) (Adele), psi_alpha(Z[1/p]) x psi_beta(Z[1/p])
/// (RealXQp) or alpha Z x beta Z (Real).
struct AdelicTFLattice {
  GroupSelector group;
  RealNumber alpha;
  RealNumber beta;

  AdelicTFLattice(GroupSelector g, double a, double b);
  double covolume() const { return alpha.value * beta.value; }
  bool exact() const { return alpha.exact.has_value() && beta.exact.has_value(); }
  RectLattice real_lattice() const { return RectLattice(alpha.value, beta.value); }
  /// Index (q, r) -> pi((alpha q, q), (beta r, r)).
  TFScaling primal() const { return {alpha, beta}; }
  /// Index (q, r) -> pi((q / beta, q), (r / alpha, r)).
  TFScaling adjoint() const { return {beta.inverse(), alpha.inverse()}; }
};

/// Height bound N on |q|, |r|, denominator exponent bound D, and the primes
/// used for non-integer witness rows on the adeles.
struct Truncation {
  long long height = 5;
  long long denom_exp = 3;
  std::vector<Prime> primes{2, 3, 5, 7};
};

/// Index pairs (q, r) enumerated for a group: all integers with
/// max(|q|, |r|) <= N, plus fractions a / p^e (e <= D, |a / p^e| <= N) over the
/// active primes, plus witness fractions +-1/p^e and 1/(p1 p2) on the adeles.
/// Sorted by (max height, q, r).
std::vector<std::pair<Rational, Rational>> enumerate_indices(const GroupSelector& group, const Truncation& trunc,
                                                             const std::vector<Prime>& active);

struct WexlerRazRow {
  Rational q;
  Rational r;
  Complex expected;
  Complex computed;
  double residual = 0.0;
  bool exact_zero = false;
  bool integer = false;
};

struct WexlerRazReport {
  GroupSelector group;
  double alpha = 0.0;
  double beta = 0.0;
  Truncation trunc;
  double tol = 0.0;
  std::vector<WexlerRazRow> rows;
  double max_residual = 0.0;
  double max_integer_residual = 0.0;
  double tail_bound = 0.0;
  bool dual = false;

  const WexlerRazRow* find(const Rational& q, const Rational& r) const;
  nlohmann::json to_json() const;
};

/// Evaluates <h, pi(lambda) g> - alpha beta delta over the adjoint lattice
/// indices within the truncation.
WexlerRazReport wexler_raz_check(const SeparableWindow& g, const SeparableWindow& h, const AdelicTFLattice& lat,
                                 const Truncation& trunc, double tol);

struct EquivalenceCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct EquivalenceReport {
  WexlerRazReport real;
  WexlerRazReport local;
  WexlerRazReport adele;
  std::vector<EquivalenceCheck> checks;
  bool passed = false;

  nlohmann::json to_json() const;
};

/// Runs the Wexler-Raz check on R, R x Q_p and A_Q for g_R (x) defaults and
/// h_R (x) defaults and cross-checks the three tables.
EquivalenceReport theorem_equivalence_suite(const Window& g, const Window& h, double alpha, double beta, Prime p,
                                            const Truncation& trunc, double tol);

/// Mixed l^{s,t} norm of a table indexed by (q, r): outer index r, inner q.
/// Infinite exponents take maxima.
double mixed_norm(const std::vector<std::pair<std::pair<Rational, Rational>, double>>& table, double s, double t);

/// Truncated M^{s,t} norm of f from the coefficients |<f, pi(lambda) g>| over
/// the primal lattice.
double modulation_norm(const SeparableWindow& f, const SeparableWindow& g, const AdelicTFLattice& lat, double s,
                       double t, const Truncation& trunc, double tol = 1e-12);

struct BalianLowRow {
  double density = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  bool supported = true;
  std::string note;
  std::vector<std::pair<int, double>> lower;  // (grid density, A)
  double upper = 0.0;
  bool frame = false;
  bool dual_found = false;
  double origin_residual = 0.0;
  double max_residual = 0.0;
};

struct BalianLowScan {
  GroupSelector group;
  std::vector<BalianLowRow> rows;
  bool monotone = false;  // lower bounds strictly decrease along the scan

  nlohmann::json to_json() const;
};

BalianLowScan balian_low_scan(const Window& g, const std::vector<double>& densities, const GroupSelector& group,
                              const Truncation& trunc, int grid_density = 16, double tol = 1e-8);

}  // namespace adelic
