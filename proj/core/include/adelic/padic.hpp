#pragma once

#include "adelic/rational.hpp"

#include <complex>
#include <map>

namespace adelic {

/// p-adic valuation; `infinite` marks the valuation of 0.
struct PAdicValuation {
  bool infinite = false;
  long long value = 0;

  static PAdicValuation infinity() { return {true, 0}; }
  friend bool operator==(const PAdicValuation&, const PAdicValuation&) = default;
  /// v >= k, with +inf >= everything.
  bool at_least(long long k) const { return infinite || value >= k; }
};

PAdicValuation padic_valuation(const Rational& x, Prime p);
/// |x|_p = p^{-v_p(x)} as an exact rational; |0|_p = 0.
Rational padic_abs(const Rational& x, Prime p);
/// True when x lies in Z_p.
bool in_padic_integers(const Rational& x, Prime p);

/// The canonical representative {x}_p in [0,1) of x mod Z_p. Uses the closed
/// form (a * m^{-1} mod p^k) / p^k for x = a / (m p^k), p not dividing m.
Rational padic_fractional_part(const Rational& x, Prime p);

/// x minus the sum of {x}_p over the primes dividing the denominator of x.
/// The result is always an integer; a non-integral value throws logic_error.
BigInt product_formula_defect(const Rational& x);

/// The unique q in [0,1) with q - x_p in Z_p for each listed p and q in Z_p
/// for every other prime.
Rational crt_congruence_solve(const std::map<Prime, Rational>& targets);

/// Exact-plus-inexact unimodular number exp(2 pi i turns) * exp(i radians).
class Phase {
 public:
  Phase() = default;
  explicit Phase(Rational turns, double radians = 0.0) : turns_(turns.frac()), radians_(radians) {}

  const Rational& turns() const { return turns_; }
  double radians() const { return radians_; }
  bool exact() const { return radians_ == 0.0; }
  bool is_one() const { return exact() && turns_.is_zero(); }

  std::complex<double> value() const;
  Phase conj() const { return Phase(-turns_, -radians_); }

  friend Phase operator*(const Phase& a, const Phase& b) { return Phase(a.turns_ + b.turns_, a.radians_ + b.radians_); }
  friend bool operator==(const Phase& a, const Phase& b) { return a.turns_ == b.turns_ && a.radians_ == b.radians_; }

 private:
  Rational turns_;
  double radians_ = 0.0;
};

/// exp(2 pi i t) for rational t, exact at multiples of 1/4 turn.
std::complex<double> unit_root(const Rational& turns);

/// Element of the Pruefer group: the root of unity exp(2 pi i k / p^n).
class PrueferElement {
 public:
  PrueferElement(Prime p, BigInt k, unsigned n);
  /// The element represented by a rational with p-power denominator, mod 1.
  static PrueferElement from_rational(const Rational& z, Prime p);

  Prime prime() const { return p_; }
  const BigInt& numerator() const { return k_; }
  unsigned exponent() const { return n_; }
  Rational as_rational() const;

  friend bool operator==(const PrueferElement&, const PrueferElement&) = default;
  friend auto operator<=>(const PrueferElement& a, const PrueferElement& b) {
    if (a.p_ != b.p_) return a.p_ <=> b.p_;
    return a.as_rational() <=> b.as_rational();
  }

 private:
  Prime p_;
  BigInt k_;
  unsigned n_;
};

/// The character omega_z(x) = exp(2 pi i {x z}_p) of Z_p; x must lie in Z_p.
Phase pruefer_char_eval(const PrueferElement& z, const Rational& x);

}  // namespace adelic
