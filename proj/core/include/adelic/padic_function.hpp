#pragma once

#include "adelic/cyclotomic.hpp"
#include "adelic/padic.hpp"

#include <complex>
#include <map>
#include <optional>
#include <vector>

namespace adelic {

/// The coset center + p^level Z_p. The center is stored as the canonical
/// representative p^level * {center / p^level}_p, so two balls are equal iff
/// their fields are equal.
class PAdicBall {
 public:
  PAdicBall(Prime p, const Rational& center, long long level);
  static PAdicBall unit(Prime p) { return PAdicBall(p, Rational(0), 0); }

  Prime prime() const { return p_; }
  const Rational& center() const { return center_; }
  long long level() const { return level_; }

  /// Haar measure p^{-level}, normalized so that Z_p has measure 1.
  Rational measure() const;
  bool contains(const Rational& t) const;
  bool contains(const PAdicBall& other) const;
  /// The p^{n} sub-balls of level `level() + n`.
  std::vector<PAdicBall> children(long long n) const;
  PAdicBall translated(const Rational& x) const { return PAdicBall(p_, center_ + x, level_); }

  friend bool operator==(const PAdicBall&, const PAdicBall&) = default;
  friend auto operator<=>(const PAdicBall& a, const PAdicBall& b) {
    if (a.p_ != b.p_) return a.p_ <=> b.p_;
    if (a.level_ != b.level_) return a.level_ <=> b.level_;
    return a.center_ <=> b.center_;
  }

 private:
  Prime p_;
  Rational center_;
  long long level_;
};

/// Two balls in an ultrametric space are nested or disjoint; returns the
/// smaller one or nothing.
std::optional<PAdicBall> intersect(const PAdicBall& a, const PAdicBall& b);

/// Integral over the ball of t -> exp(2 pi i {r t}_p):
/// p^{-k} exp(2 pi i {r a}_p) when |r|_p <= p^k, otherwise 0.
Cyclotomic char_ball_integral(const Rational& r, const PAdicBall& ball);

/// One summand coeff * exp(-2 pi i {freq t}_p) * 1_ball(t).
struct PAdicTerm {
  Cyclotomic coeff;
  Rational freq;
  PAdicBall ball;
};

/// Locally constant, compactly supported function on Q_p, stored as a finite
/// sum of character-times-ball-indicator terms with exact coefficients.
class PAdicTestFunction {
 public:
  explicit PAdicTestFunction(Prime p) : p_(p) { require_prime(p); }
  PAdicTestFunction(Prime p, std::vector<PAdicTerm> terms);

  static PAdicTestFunction indicator(const PAdicBall& ball);
  /// 1_{Z_p}
  static PAdicTestFunction unit(Prime p) { return indicator(PAdicBall::unit(p)); }

  Prime prime() const { return p_; }
  const std::vector<PAdicTerm>& terms() const { return terms_; }
  bool is_unit_indicator() const;

  Cyclotomic operator()(const Rational& t) const;

  /// E_r T_x f, with (T_x f)(t) = f(t - x) and (E_r f)(t) = exp(-2 pi i {r t}_p) f(t).
  PAdicTestFunction shifted(const Rational& x, const Rational& r) const;

  /// Normal form: all balls refined to the finest level present, frequencies
  /// reduced modulo p^{-level} Z_p, equal (ball, frequency) terms merged and
  /// zero terms dropped. Balls are pairwise disjoint afterwards.
  PAdicTestFunction canonical() const;
  /// Same, refined to at least `level`.
  PAdicTestFunction canonical(long long level) const;
  long long finest_level() const;

  PAdicTestFunction operator+(const PAdicTestFunction& o) const;
  PAdicTestFunction operator*(const Cyclotomic& s) const;

  /// Exact function equality, decided on a common refinement.
  friend bool equals(const PAdicTestFunction& f, const PAdicTestFunction& g);

 private:
  Prime p_;
  std::vector<PAdicTerm> terms_;
};

/// Replace r by its canonical representative modulo p^{-level} Z_p on the
/// ball, folding the discarded part into the coefficient.
PAdicTerm reduce_frequency(const PAdicTerm& term);

/// <f, g> = integral of f * conj(g), linear in f. Exact.
Cyclotomic inner_product_padic(const PAdicTestFunction& f, const PAdicTestFunction& g);

/// Finite Fourier series on Z_p: f(x) = sum_z c(z) exp(2 pi i {x z}_p).
struct S0ZpSeries {
  Prime p;
  std::map<PrueferElement, std::complex<double>> coefficients;

  std::complex<double> operator()(const Rational& x) const;
};

/// S0(Z_p) norm: the l1 norm of the Fourier coefficients.
double s0_norm(const S0ZpSeries& series);
/// S0(Q_p) norm of a function given by its restrictions to finitely many
/// cosets y + Z_p (keys are the coset representatives).
double s0_norm_qp(const std::map<Rational, S0ZpSeries>& family);

}  // namespace adelic
