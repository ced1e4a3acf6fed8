#include "adelic/padic.hpp"

#include "adelic/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace adelic {

namespace {

long long strip(BigInt& n, Prime p) {
  long long k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

}  // namespace

PAdicValuation padic_valuation(const Rational& x, Prime p) {
  require_prime(p);
  if (x.is_zero()) return PAdicValuation::infinity();
  BigInt a = x.num();
  BigInt b = x.den();
  return {false, strip(a, p) - strip(b, p)};
}

Rational padic_abs(const Rational& x, Prime p) {
  auto v = padic_valuation(x, p);
  if (v.infinite) return Rational(0);
  return pow(Rational(static_cast<long long>(p)), -v.value);
}

bool in_padic_integers(const Rational& x, Prime p) { return x.den() % p != 0; }

Rational padic_fractional_part(const Rational& x, Prime p) {
  require_prime(p);
  BigInt m = x.den();
  long long k = strip(m, p);
  if (k == 0) return Rational(0);
  BigInt pk = ipow(BigInt(p), static_cast<unsigned>(k));
  BigInt r = mod(mod(x.num(), pk) * mod_inverse(m, pk), pk);
  return Rational(r, pk);
}

BigInt product_formula_defect(const Rational& x) {
  Rational rest = x;
  for (Prime p : prime_divisors(x.den())) rest -= padic_fractional_part(x, p);
  if (!rest.is_integer()) throw std::logic_error("product_formula_defect: non-integral result " + rest.str());
  return rest.num();
}

Rational crt_congruence_solve(const std::map<Prime, Rational>& targets) {
  Rational q;
  for (const auto& [p, x] : targets) q += padic_fractional_part(x, p);
  return q.frac();
}

std::complex<double> unit_root(const Rational& turns) {
  Rational t = turns.frac();
  if (t.is_zero()) return {1.0, 0.0};
  if (t.den() == 2) return {-1.0, 0.0};
  if (t.den() == 4) return t.num() == 1 ? std::complex<double>{0.0, 1.0} : std::complex<double>{0.0, -1.0};
  // Reduce to (-1/2, 1/2] before scaling to keep the argument small.
  double a = t.to_double();
  if (a > 0.5) a -= 1.0;
  double ang = 2.0 * std::numbers::pi * a;
  return {std::cos(ang), std::sin(ang)};
}

std::complex<double> Phase::value() const {
  std::complex<double> v = unit_root(turns_);
  if (radians_ == 0.0) return v;
  return v * std::polar(1.0, radians_);
}

PrueferElement::PrueferElement(Prime p, BigInt k, unsigned n) : p_(p), k_(std::move(k)), n_(n) {
  require_prime(p);
  BigInt pn = ipow(BigInt(p), n_);
  if (k_ < 0 || k_ >= pn) throw InvalidArgument("PrueferElement: numerator out of range [0, p^n)");
  if (k_ == 0 && n_ != 0) throw InvalidArgument("PrueferElement: zero must have exponent 0");
  if (n_ != 0 && k_ % p_ == 0) throw InvalidArgument("PrueferElement: numerator divisible by p");
}

PrueferElement PrueferElement::from_rational(const Rational& z, Prime p) {
  require_prime(p);
  Rational f = z.frac();
  if (f.is_zero()) return PrueferElement(p, 0, 0);
  BigInt d = f.den();
  unsigned n = 0;
  while (d % p == 0) {
    d /= p;
    ++n;
  }
  if (d != 1) throw InvalidArgument("PrueferElement: denominator of " + z.str() + " is not a power of p");
  return PrueferElement(p, f.num(), n);
}

Rational PrueferElement::as_rational() const { return Rational(k_, ipow(BigInt(p_), n_)); }

Phase pruefer_char_eval(const PrueferElement& z, const Rational& x) {
  if (!in_padic_integers(x, z.prime()))
    throw PreconditionViolation("pruefer_char_eval: x = " + x.str() + " is not a p-adic integer");
  return Phase(padic_fractional_part(x * z.as_rational(), z.prime()));
}

}  // namespace adelic
