#include "adelic/adelic.hpp"

#include "adelic/errors.hpp"
#include "adelic/padic_function.hpp"

#include <cmath>
#include <set>

namespace adelic {

GroupSelector GroupSelector::rxqp(Prime p) {
  require_prime(p);
  return {Kind::RealXQp, p};
}

GroupSelector GroupSelector::parse(const std::string& text, Prime prime) {
  if (text == "real") return real();
  if (text == "adele") return adele();
  if (text == "rxqp") return rxqp(prime);
  if (text.rfind("rxqp:", 0) == 0) {
    try {
      return rxqp(std::stoull(text.substr(5)));
    } catch (const std::logic_error&) {
      // fall through
    }
  }
  throw InvalidArgument("unknown group '" + text + "'");
}

std::string GroupSelector::str() const {
  switch (kind) {
    case Kind::Real: return "real";
    case Kind::RealXQp: return "rxqp:" + std::to_string(p);
    case Kind::Adele: return "adele";
  }
  return "";
}

RealNumber::RealNumber(double v) : value(v) {
  if (!std::isfinite(v)) throw InvalidArgument("real coordinate must be finite");
}

RealNumber RealNumber::promoted(double v) {
  RealNumber out(v);
  if (auto r = Rational::promote(v)) out.exact = *r;
  return out;
}

RealNumber RealNumber::operator*(const Rational& r) const {
  if (exact) return RealNumber(*exact * r);
  RealNumber out;
  out.value = value * r.to_double();
  return out;
}

RealNumber RealNumber::inverse() const {
  if (exact) return RealNumber(exact->inverse());
  if (value == 0.0) throw InvalidArgument("cannot invert zero");
  return RealNumber(1.0 / value);
}

Rational AdelicPoint::at(Prime p) const {
  auto it = finite.find(p);
  return it == finite.end() ? rest : it->second;
}

AdelicPoint AdelicPoint::operator+(const AdelicPoint& o) const {
  AdelicPoint out;
  if (real.exact && o.real.exact) {
    out.real = RealNumber(*real.exact + *o.real.exact);
  } else {
    out.real = RealNumber(real.value + o.real.value);
  }
  std::set<Prime> primes;
  for (const auto& [p, v] : finite) primes.insert(p);
  for (const auto& [p, v] : o.finite) primes.insert(p);
  for (Prime p : primes) out.finite[p] = at(p) + o.at(p);
  out.rest = rest + o.rest;
  return out;
}

AdelicPoint AdelicPoint::operator-() const {
  AdelicPoint out;
  out.real = real.exact ? RealNumber(-*real.exact) : RealNumber(-real.value);
  for (const auto& [p, v] : finite) out.finite[p] = -v;
  out.rest = -rest;
  return out;
}

bool AdelicPoint::in_compact_part() const {
  for (const auto& [p, v] : finite)
    if (!in_padic_integers(v, p)) return false;
  for (Prime p : prime_divisors(rest.den()))
    if (!finite.count(p)) return false;
  return true;
}

AdelicPoint lattice_embed(const GroupSelector& group, const RealNumber& alpha, const Rational& q) {
  AdelicPoint x;
  x.real = alpha * q;
  switch (group.kind) {
    case GroupSelector::Kind::Real:
      if (!q.is_integer()) throw InvalidArgument("real lattice indices are integers");
      break;
    case GroupSelector::Kind::RealXQp: {
      auto primes = prime_divisors(q.den());
      if (primes.size() > 1 || (primes.size() == 1 && primes[0] != group.p)) {
        throw InvalidArgument("index " + q.str() + " is not in Z[1/" + std::to_string(group.p) + "]");
      }
      if (!q.is_integer()) x.finite[group.p] = q;
      x.rest = q;
      break;
    }
    case GroupSelector::Kind::Adele:
      for (Prime p : prime_divisors(q.den())) x.finite[p] = q;
      x.rest = q;
      break;
  }
  return x;
}

Phase character_pair(const AdelicPoint& x, const AdelicPoint& y, const GroupSelector& group) {
  Rational turns;
  double radians = 0.0;
  if (x.real.exact && y.real.exact) {
    turns = (*x.real.exact * *y.real.exact).frac();
  } else {
    double t = x.real.value * y.real.value;
    radians = 2.0 * M_PI * (t - std::floor(t));
  }
  std::set<Prime> primes;
  switch (group.kind) {
    case GroupSelector::Kind::Real: break;
    case GroupSelector::Kind::RealXQp: primes.insert(group.p); break;
    case GroupSelector::Kind::Adele:
      for (const auto& [p, v] : x.finite) primes.insert(p);
      for (const auto& [p, v] : y.finite) primes.insert(p);
      break;
  }
  for (Prime p : primes) turns -= padic_fractional_part(x.at(p) * y.at(p), p);
  return Phase(turns, radians);
}

std::pair<AdelicPoint, Rational> fundamental_domain_reduce(const AdelicPoint& x, const RealNumber& alpha,
                                                           const GroupSelector& group) {
  if (alpha.value == 0.0) throw InvalidArgument("alpha must be nonzero");
  std::map<Prime, Rational> targets;
  switch (group.kind) {
    case GroupSelector::Kind::Real: break;
    case GroupSelector::Kind::RealXQp: targets[group.p] = x.at(group.p); break;
    case GroupSelector::Kind::Adele: targets = x.finite; break;
  }
  Rational qf = crt_congruence_solve(targets);
  // integer n placing x_inf - alpha (qf + n) in [0, |alpha|)
  Rational q;
  if (x.real.exact && alpha.exact) {
    Rational s = (*x.real.exact - *alpha.exact * qf) / *alpha.exact;
    q = qf + Rational(alpha.exact->sign() > 0 ? s.floor() : s.ceil());
  } else {
    double s = (x.real.value - alpha.value * qf.to_double()) / alpha.value;
    double n = alpha.value > 0 ? std::floor(s) : std::ceil(s);
    q = qf + Rational(static_cast<long long>(n));
  }
  AdelicPoint b = x + (-lattice_embed(group.kind == GroupSelector::Kind::Real ? GroupSelector::adele() : group, alpha, q));
  if (!(b.real.exact) && alpha.value > 0) {
    // guard against rounding just outside [0, alpha)
    if (b.real.value < 0.0 && b.real.value > -1e-12 * std::abs(alpha.value)) b.real.value = 0.0;
  }
  if (group.kind == GroupSelector::Kind::Real) {
    b.finite.clear();
    b.rest = Rational(0);
  }
  return {b, q};
}

double fundamental_domain_measure(const RealNumber& alpha, const GroupSelector& group,
                                  const std::vector<Prime>& primes) {
  double m = std::abs(alpha.value);
  auto factor = [](Prime p) { return PAdicBall::unit(p).measure().to_double(); };
  switch (group.kind) {
    case GroupSelector::Kind::Real: break;
    case GroupSelector::Kind::RealXQp: m *= factor(group.p); break;
    case GroupSelector::Kind::Adele:
      for (Prime p : primes) m *= factor(p);
      break;
  }
  return m;
}

}  // namespace adelic
