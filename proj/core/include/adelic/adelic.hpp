#pragma once

#include "adelic/padic.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace adelic {

/// The three settings: R, R x Q_p, and the adeles A_Q.
struct GroupSelector {
  enum class Kind { Real, RealXQp, Adele };
  Kind kind = Kind::Real;
  Prime p = 0;  // only for RealXQp

  static GroupSelector real() { return {}; }
  static GroupSelector rxqp(Prime p);
  static GroupSelector adele() { return {Kind::Adele, 0}; }
  /// "real", "rxqp:P" or "adele"; a bare "rxqp" takes `prime`.
  static GroupSelector parse(const std::string& text, Prime prime = 2);

  std::string str() const;
  friend bool operator==(const GroupSelector&, const GroupSelector&) = default;
};

/// A real number kept exactly when it is known to be rational.
struct RealNumber {
  double value = 0.0;
  std::optional<Rational> exact;

  RealNumber() = default;
  RealNumber(double v);  // NOLINT(google-explicit-constructor)
  RealNumber(const Rational& r) : value(r.to_double()), exact(r) {}  // NOLINT(google-explicit-constructor)
  /// Promotes doubles within 1e-12 of a fraction with denominator <= 1000.
  static RealNumber promoted(double v);

  RealNumber operator*(const Rational& r) const;
  RealNumber inverse() const;
};

/// (x_inf, (x_p)_p). Listed primes carry their coordinate explicitly; every
/// other prime carries `rest`, which lies in Z_p there.
struct AdelicPoint {
  RealNumber real;
  std::map<Prime, Rational> finite;
  Rational rest;

  Rational at(Prime p) const;
  AdelicPoint operator+(const AdelicPoint& o) const;
  AdelicPoint operator-() const;
  /// True when every coordinate lies in Z_p (rest is checked at the primes of
  /// its denominator, which must then be listed).
  bool in_compact_part() const;
};

/// phi_alpha(q) = (alpha q, (q)_p). For RealXQp(p) requires q in Z[1/p].
AdelicPoint lattice_embed(const GroupSelector& group, const RealNumber& alpha, const Rational& q);

/// omega_y(x) = exp(2 pi i x_inf y_inf) prod_p exp(-2 pi i {x_p y_p}_p).
/// Exact when both real parts are exact.
Phase character_pair(const AdelicPoint& x, const AdelicPoint& y, const GroupSelector& group);

/// x = b + phi_alpha(q) with b in [0, |alpha|) x prod Z_p.
std::pair<AdelicPoint, Rational> fundamental_domain_reduce(const AdelicPoint& x, const RealNumber& alpha,
                                                           const GroupSelector& group);

/// Haar measure of [0, |alpha|) x prod Z_p, as the product of its factors.
double fundamental_domain_measure(const RealNumber& alpha, const GroupSelector& group,
                                  const std::vector<Prime>& primes);

}  // namespace adelic
