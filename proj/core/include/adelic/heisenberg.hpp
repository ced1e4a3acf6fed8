#pragma once

#include "adelic/separable.hpp"
#include "adelic/wexler_raz.hpp"

#include <map>
#include <nlohmann/json.hpp>
#include <utility>
#include <vector>

namespace adelic {

enum class ModuleSide { LeftA, RightB };

/// LeftA: index (q, r) stands for pi(lambda) = E_{(beta r, r)} T_{(alpha q, q)}.
/// RightB: index (q, r) stands for the adjoint of E_{(r / alpha, r)} T_{(q / beta, q)};
/// the factor 1/(alpha beta) is folded into the stored coefficients.
struct ModuleAlgebraTag {
  ModuleSide side = ModuleSide::LeftA;
  GroupSelector group;
  RealNumber alpha{1.0};
  RealNumber beta{1.0};

  ModuleAlgebraTag() = default;
  ModuleAlgebraTag(ModuleSide s, GroupSelector g, double a, double b);
  friend bool operator==(const ModuleAlgebraTag& x, const ModuleAlgebraTag& y);
};

using LatticeIndex = std::pair<Rational, Rational>;

struct ModuleElement {
  ModuleAlgebraTag tag;
  std::map<LatticeIndex, Complex> coefficients;
  /// l1 mass of the coefficients dropped by truncation, bounded above.
  double tail_bound = 0.0;

  static ModuleElement delta(const ModuleAlgebraTag& tag, const LatticeIndex& at = {}, Complex c = 1.0);
  Complex at(const LatticeIndex& i) const;
  double l1_norm() const;
  ModuleElement operator+(const ModuleElement& o) const;
  ModuleElement operator-(const ModuleElement& o) const;
  ModuleElement operator*(Complex c) const;
  nlohmann::json to_json() const;
};

/// c(l1, l2) with U(l1) U(l2) = c(l1, l2) U(l1 + l2) for the basis operators of the tag.
Phase cocycle(const LatticeIndex& l1, const LatticeIndex& l2, const ModuleAlgebraTag& tag);

ModuleElement twisted_convolve(const ModuleElement& a, const ModuleElement& b);
ModuleElement twisted_involution(const ModuleElement& a);

/// A finite sum of separable functions, kept as separable terms with equal
/// local parts merged.
struct SeparableSum {
  std::vector<SeparableWindow> terms;

  SeparableSum() = default;
  explicit SeparableSum(SeparableWindow w) { add(std::move(w)); }
  void add(SeparableWindow w);
  SeparableSum operator+(const SeparableSum& o) const;
  SeparableSum operator-(const SeparableSum& o) const;
  SeparableSum operator*(Complex c) const;
  /// Value at (t, (t_p)); primes absent from the map take t_p = 0.
  Complex operator()(double t, const std::map<Prime, Rational>& finite = {}) const;
  std::size_t atom_count() const;
};

Complex inner_product(const SeparableSum& f, const SeparableSum& g, double tol = 1e-13);
double l2_norm(const SeparableSum& f, double tol = 1e-13);

/// pi(lambda) f for a single separable window, lambda = ((x, (q)_p), (w, (r)_p)).
SeparableWindow tf_shift(const SeparableWindow& f, double x, const Rational& q, double w, const Rational& r);

/// The inner product of the requested side over the truncation window.
ModuleElement module_inner(const SeparableWindow& f, const SeparableWindow& g, const ModuleAlgebraTag& tag,
                           const Truncation& trunc, double tol);

/// a . f (LeftA) or f . b (RightB).
SeparableSum module_action(const ModuleElement& a, const SeparableSum& f);
SeparableSum module_action(const ModuleElement& a, const SeparableWindow& f);

struct ModuleAxiomReport {
  GroupSelector group;
  double alpha = 0.0, beta = 0.0;
  Truncation trunc;
  double residual = 0.0;     // || <f,g>_A . h - f . <g,h>_B ||_2
  double tail_bound = 0.0;   // certified contribution of dropped coefficients
  double identity_residual = 0.0;        // || <g,h>_B - delta_0 ||_1
  double reconstruction_residual = 0.0;  // || f - <f,g>_A . h ||_2 / ||f||_2
  double wr_max_residual = 0.0;
  bool dual_by_identity = false;
  bool dual_by_reconstruction = false;
  bool dual_by_wexler_raz = false;
  bool consistent = false;
  bool passed = false;
  nlohmann::json to_json() const;
};

ModuleAxiomReport module_axiom_check(const SeparableWindow& f, const SeparableWindow& g, const SeparableWindow& h,
                                     const GroupSelector& group, double alpha, double beta, const Truncation& trunc,
                                     double tol);

struct ProjectionReport {
  GroupSelector group;
  double alpha = 0.0, beta = 0.0;
  Truncation trunc;
  double tol = 0.0;
  bool frame = false;
  std::string verdict;  // "projection", "not a projection" or "not a frame"
  double idempotency = 0.0;
  double self_adjointness = 0.0;
  double tail_bound = 0.0;
  ModuleElement element;
  nlohmann::json to_json() const;
};

ProjectionReport projection_check(const Window& g, double alpha, double beta, const GroupSelector& group,
                                  const Truncation& trunc, double tol);

}  // namespace adelic
