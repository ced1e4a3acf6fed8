#include "adelic/padic_function.hpp"

#include "adelic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace adelic {

namespace {

Rational prime_power(Prime p, long long k) { return pow(Rational(static_cast<long long>(p)), k); }

constexpr long long kMaxRefinement = 1 << 20;

}  // namespace

PAdicBall::PAdicBall(Prime p, const Rational& center, long long level) : p_(p), level_(level) {
  require_prime(p);
  Rational scale = prime_power(p, level);
  center_ = scale * padic_fractional_part(center / scale, p);
}

Rational PAdicBall::measure() const { return prime_power(p_, -level_); }

bool PAdicBall::contains(const Rational& t) const { return padic_valuation(t - center_, p_).at_least(level_); }

bool PAdicBall::contains(const PAdicBall& other) const {
  return other.p_ == p_ && other.level_ >= level_ && contains(other.center_);
}

std::vector<PAdicBall> PAdicBall::children(long long n) const {
  if (n < 0) throw InvalidArgument("PAdicBall::children: negative depth");
  BigInt count = ipow(BigInt(p_), static_cast<unsigned>(n));
  if (count > kMaxRefinement) throw Unsupported("PAdicBall::children: refinement too large");
  auto total = count.convert_to<long long>();
  std::vector<PAdicBall> out;
  out.reserve(static_cast<std::size_t>(total));
  Rational step = prime_power(p_, level_);
  for (long long j = 0; j < total; ++j) out.emplace_back(p_, center_ + step * Rational(j), level_ + n);
  return out;
}

std::optional<PAdicBall> intersect(const PAdicBall& a, const PAdicBall& b) {
  if (a.prime() != b.prime()) throw InvalidArgument("intersect: prime mismatch");
  if (a.contains(b)) return b;
  if (b.contains(a)) return a;
  return std::nullopt;
}

Cyclotomic char_ball_integral(const Rational& r, const PAdicBall& ball) {
  if (!padic_valuation(r, ball.prime()).at_least(-ball.level())) return {};
  return Cyclotomic::root(padic_fractional_part(r * ball.center(), ball.prime()), ball.measure());
}

PAdicTestFunction::PAdicTestFunction(Prime p, std::vector<PAdicTerm> terms) : p_(p), terms_(std::move(terms)) {
  require_prime(p);
  for (const auto& t : terms_) {
    if (t.ball.prime() != p_) throw InvalidArgument("PAdicTestFunction: term ball has a different prime");
  }
}

PAdicTestFunction PAdicTestFunction::indicator(const PAdicBall& ball) {
  return PAdicTestFunction(ball.prime(), {PAdicTerm{Cyclotomic(Rational(1)), Rational(0), ball}});
}

bool PAdicTestFunction::is_unit_indicator() const { return equals(*this, unit(p_)); }

Cyclotomic PAdicTestFunction::operator()(const Rational& t) const {
  Cyclotomic v;
  for (const auto& term : terms_) {
    if (!term.ball.contains(t)) continue;
    v += term.coeff.rotated(Phase(-padic_fractional_part(term.freq * t, p_)));
  }
  return v;
}

PAdicTerm reduce_frequency(const PAdicTerm& term) {
  const Prime p = term.ball.prime();
  const long long k = term.ball.level();
  Rational scale = prime_power(p, -k);
  Rational reduced = scale * padic_fractional_part(term.freq / scale, p);
  Rational dropped = term.freq - reduced;
  // On the ball, {dropped * t}_p is constant and equal to {dropped * center}_p.
  Phase fold(-padic_fractional_part(dropped * term.ball.center(), p));
  return PAdicTerm{term.coeff.rotated(fold), reduced, term.ball};
}

PAdicTestFunction PAdicTestFunction::shifted(const Rational& x, const Rational& r) const {
  std::vector<PAdicTerm> out;
  out.reserve(terms_.size());
  for (const auto& term : terms_) {
    // exp(-2 pi i {r_j (t - x)}_p) = exp(-2 pi i {r_j t}_p) exp(2 pi i {r_j x}_p)
    Phase from_translation(padic_fractional_part(term.freq * x, p_));
    PAdicTerm moved{term.coeff.rotated(from_translation), term.freq + r, term.ball.translated(x)};
    out.push_back(reduce_frequency(moved));
  }
  return PAdicTestFunction(p_, std::move(out));
}

long long PAdicTestFunction::finest_level() const {
  long long level = std::numeric_limits<long long>::min();
  for (const auto& t : terms_) level = std::max(level, t.ball.level());
  return terms_.empty() ? 0 : level;
}

PAdicTestFunction PAdicTestFunction::canonical() const { return canonical(finest_level()); }

PAdicTestFunction PAdicTestFunction::canonical(long long level) const {
  std::map<std::pair<PAdicBall, Rational>, Cyclotomic> merged;
  for (const auto& term : terms_) {
    if (term.coeff.is_zero()) continue;
    if (term.ball.level() > level) throw InvalidArgument("canonical: level coarser than a term ball");
    for (const auto& child : term.ball.children(level - term.ball.level())) {
      PAdicTerm reduced = reduce_frequency(PAdicTerm{term.coeff, term.freq, child});
      merged[{reduced.ball, reduced.freq}] += reduced.coeff;
    }
  }
  std::vector<PAdicTerm> out;
  for (auto& [key, coeff] : merged) {
    if (!coeff.is_zero()) out.push_back(PAdicTerm{std::move(coeff), key.second, key.first});
  }
  return PAdicTestFunction(p_, std::move(out));
}

PAdicTestFunction PAdicTestFunction::operator+(const PAdicTestFunction& o) const {
  if (o.p_ != p_) throw InvalidArgument("PAdicTestFunction: prime mismatch");
  std::vector<PAdicTerm> terms = terms_;
  terms.insert(terms.end(), o.terms_.begin(), o.terms_.end());
  return PAdicTestFunction(p_, std::move(terms));
}

PAdicTestFunction PAdicTestFunction::operator*(const Cyclotomic& s) const {
  std::vector<PAdicTerm> terms = terms_;
  for (auto& t : terms) t.coeff = t.coeff * s;
  return PAdicTestFunction(p_, std::move(terms));
}

bool equals(const PAdicTestFunction& f, const PAdicTestFunction& g) {
  if (f.p_ != g.p_) return false;
  long long level = std::max(f.finest_level(), g.finest_level());
  auto a = f.canonical(level);
  auto b = g.canonical(level);
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    const auto& x = a.terms_[i];
    const auto& y = b.terms_[i];
    if (!(x.ball == y.ball) || x.freq != y.freq || !(x.coeff == y.coeff)) return false;
  }
  return true;
}

Cyclotomic inner_product_padic(const PAdicTestFunction& f, const PAdicTestFunction& g) {
  if (f.prime() != g.prime()) throw InvalidArgument("inner_product_padic: prime mismatch");
  Cyclotomic total;
  for (const auto& a : f.terms()) {
    for (const auto& b : g.terms()) {
      auto common = intersect(a.ball, b.ball);
      if (!common) continue;
      // f * conj(g) carries the character exp(2 pi i {(s - r) t}_p).
      Cyclotomic integral = char_ball_integral(b.freq - a.freq, *common);
      if (integral.is_zero()) continue;
      total += a.coeff * b.coeff.conj() * integral;
    }
  }
  return total;
}

std::complex<double> S0ZpSeries::operator()(const Rational& x) const {
  std::complex<double> v{0.0, 0.0};
  for (const auto& [z, c] : coefficients) v += c * pruefer_char_eval(z, x).value();
  return v;
}

double s0_norm(const S0ZpSeries& series) {
  double total = 0.0;
  for (const auto& [z, c] : series.coefficients) total += std::abs(c);
  return total;
}

double s0_norm_qp(const std::map<Rational, S0ZpSeries>& family) {
  double total = 0.0;
  for (const auto& [y, series] : family) total += s0_norm(series);
  return total;
}

}  // namespace adelic
