#pragma once

#include "adelic/padic.hpp"

#include <complex>
#include <map>
#include <string>

namespace adelic {

/// Exact element of the cyclotomic closure of Q: a finite rational
/// combination of roots of unity, sum_t w_t exp(2 pi i t).
///
/// Terms are kept in a canonical basis so that equality and zero tests are
/// exact. For every prime p the relation sum_{j<p} exp(2 pi i (t + j/p)) = 0
/// is used to eliminate any term whose leading p-adic digit ({t}_p times p,
/// floored) equals p-1. The surviving roots form a Q-basis of each Q(zeta_N).
class Cyclotomic {
 public:
  Cyclotomic() = default;
  Cyclotomic(const Rational& r);  // NOLINT(google-explicit-constructor)
  /// weight * exp(2 pi i turns)
  static Cyclotomic root(const Rational& turns, const Rational& weight = Rational(1));

  const std::map<Rational, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True when the value is a single weighted root of unity (or zero).
  bool is_monomial() const { return terms_.size() <= 1; }

  std::complex<double> value() const;
  Cyclotomic conj() const;
  /// Multiply by an exact phase; throws PreconditionViolation for inexact ones.
  Cyclotomic rotated(const Phase& phase) const;
  /// |value|^2 as an exact element (real, but kept in this representation).
  Cyclotomic norm_squared() const { return *this * conj(); }

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Rational& s);

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return a.terms_ == b.terms_; }

  std::string str() const;

 private:
  void add_raw(const Rational& turns, const Rational& weight);
  void normalize();

  std::map<Rational, Rational> terms_;
};

}  // namespace adelic
