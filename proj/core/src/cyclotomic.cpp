#include "adelic/cyclotomic.hpp"

#include "adelic/errors.hpp"

#include <set>

namespace adelic {

Cyclotomic::Cyclotomic(const Rational& r) {
  if (!r.is_zero()) terms_.emplace(Rational(0), r);
}

Cyclotomic Cyclotomic::root(const Rational& turns, const Rational& weight) {
  Cyclotomic c;
  c.add_raw(turns.frac(), weight);
  c.normalize();
  return c;
}

void Cyclotomic::add_raw(const Rational& turns, const Rational& weight) {
  if (weight.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(turns, weight);
  if (!inserted) {
    it->second += weight;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Cyclotomic::normalize() {
  std::set<Prime> primes;
  for (const auto& [t, w] : terms_) {
    for (Prime p : prime_divisors(t.den())) primes.insert(p);
  }
  for (Prime p : primes) {
    std::map<Rational, Rational> old;
    old.swap(terms_);
    const Rational inv_p(BigInt(1), BigInt(p));
    const BigInt top(p - 1);
    for (const auto& [t, w] : old) {
      Rational fp = padic_fractional_part(t, p);
      if ((fp * Rational(static_cast<long long>(p))).floor() != top) {
        add_raw(t, w);
        continue;
      }
      for (Prime j = 0; j + 1 < p; ++j) {
        Rational shift = inv_p * Rational(static_cast<long long>(p - 1 - j));
        add_raw((t - shift).frac(), -w);
      }
    }
  }
}

std::complex<double> Cyclotomic::value() const {
  std::complex<double> sum{0.0, 0.0};
  std::complex<double> comp{0.0, 0.0};
  for (const auto& [t, w] : terms_) {
    std::complex<double> y = unit_root(t) * w.to_double() - comp;
    std::complex<double> s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return sum;
}

Cyclotomic Cyclotomic::conj() const {
  Cyclotomic c;
  for (const auto& [t, w] : terms_) c.add_raw((-t).frac(), w);
  c.normalize();
  return c;
}

Cyclotomic Cyclotomic::rotated(const Phase& phase) const {
  if (!phase.exact()) throw PreconditionViolation("Cyclotomic::rotated: inexact phase");
  Cyclotomic c;
  for (const auto& [t, w] : terms_) c.add_raw((t + phase.turns()).frac(), w);
  c.normalize();
  return c;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic c = *this;
  for (auto& [t, w] : c.terms_) w = -w;
  return c;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  // Sums of canonical elements stay canonical: the basis condition is per term.
  for (const auto& [t, w] : o.terms_) add_raw(t, w);
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
  for (const auto& [t, w] : o.terms_) add_raw(t, -w);
  return *this;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  Cyclotomic c;
  for (const auto& [ta, wa] : a.terms_) {
    for (const auto& [tb, wb] : b.terms_) c.add_raw((ta + tb).frac(), wa * wb);
  }
  c.normalize();
  return c;
}

Cyclotomic operator*(const Cyclotomic& a, const Rational& s) {
  if (s.is_zero()) return {};
  Cyclotomic c = a;
  for (auto& [t, w] : c.terms_) w *= s;
  return c;
}

std::string Cyclotomic::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [t, w] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + w.str() + ")";
    if (!t.is_zero()) out += "*e(" + t.str() + ")";
  }
  return out;
}

}  // namespace adelic
