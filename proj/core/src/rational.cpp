#include "adelic/rational.hpp"

#include "adelic/errors.hpp"

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>

namespace adelic {

namespace mp = boost::multiprecision;

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_ == 0) throw InvalidArgument("Rational: zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g = mp::gcd(num_, den_);
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw InvalidArgument("Rational: cannot parse '" + std::string(whole) + "'");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw InvalidArgument("Rational: cannot parse '" + std::string(whole) + "'");
  BigInt v = 0;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c < '0' || c > '9') throw InvalidArgument("Rational: cannot parse '" + std::string(whole) + "'");
    v = v * 10 + (c - '0');
  }
  return neg ? BigInt(-v) : v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    return Rational(parse_integer(trim(s.substr(0, slash)), text), parse_integer(trim(s.substr(slash + 1)), text));
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip.remove_prefix(1);
    BigInt whole = ip.empty() ? BigInt(0) : parse_integer(ip, text);
    BigInt frac = fp.empty() ? BigInt(0) : parse_integer(fp, text);
    if (!fp.empty() && (fp[0] == '-' || fp[0] == '+')) throw InvalidArgument("Rational: cannot parse '" + std::string(text) + "'");
    BigInt scale = ipow(BigInt(10), static_cast<unsigned>(fp.size()));
    Rational r(whole * scale + frac, scale);
    return neg ? -r : r;
  }
  return Rational(parse_integer(s, text));
}

std::optional<Rational> Rational::promote(double x, double rel_tol, long long max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  // Continued-fraction convergents of x.
  long double v = std::fabs(static_cast<long double>(x));
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    long double a = std::floor(v);
    if (a > static_cast<long double>(std::numeric_limits<long long>::max() / 4)) break;
    auto ai = static_cast<long long>(a);
    long long h2 = ai * h1 + h0;
    long long k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    double approx = static_cast<double>(h1) / static_cast<double>(k1);
    if (std::fabs(approx - std::fabs(x)) <= rel_tol * std::max(1.0, std::fabs(x))) {
      Rational r{BigInt(h1), BigInt(k1)};
      return x < 0 ? -r : r;
    }
    long double rem = v - a;
    if (rem <= 0) break;
    v = 1.0L / rem;
  }
  return std::nullopt;
}

BigInt Rational::floor() const {
  BigInt q = num_ / den_;  // truncates toward zero
  if (num_ < 0 && q * den_ != num_) q -= 1;
  return q;
}

BigInt Rational::ceil() const {
  BigInt q = num_ / den_;
  if (num_ > 0 && q * den_ != num_) q += 1;
  return q;
}

Rational Rational::frac() const { return Rational(num_ - floor() * den_, den_, Canonical{}); }

Rational Rational::inverse() const {
  if (num_ == 0) throw InvalidArgument("Rational: inverse of zero");
  return Rational(den_, num_);
}

double Rational::to_double() const {
  if (den_ == 1) return num_.convert_to<double>();
  // Scale so that the quotient carries enough significant bits.
  using Float = mp::number<mp::cpp_bin_float<80>>;
  Float q = Float(num_) / Float(den_);
  return q.convert_to<double>();
}

std::string Rational::str() const { return num_.str() + "/" + den_.str(); }

Rational& Rational::operator+=(const Rational& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw InvalidArgument("Rational: division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  BigInt l = a.num_ * b.den_;
  BigInt r = b.num_ * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::size_t Rational::hash() const {
  std::size_t seed = hash_value(num_);
  boost::hash_combine(seed, hash_value(den_));
  return seed;
}

Rational pow(const Rational& base, long long exponent) {
  if (exponent < 0) return pow(base.inverse(), -exponent);
  auto e = static_cast<unsigned>(exponent);
  return Rational(ipow(base.num(), e), ipow(base.den(), e));
}

BigInt ipow(const BigInt& base, unsigned exponent) { return mp::pow(base, exponent); }

BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt old_r = mod(a, m), r = m;
  BigInt old_s = 1, s = 0;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw InvalidArgument("mod_inverse: arguments not coprime");
  return mod(old_s, m);
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is deterministic for all n < 2^64.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

void require_prime(Prime p) {
  if (!is_prime(p)) throw InvalidArgument("expected a prime, got " + std::to_string(p));
}

std::vector<Prime> prime_divisors(BigInt n) {
  if (n < 0) n = -n;
  std::vector<Prime> out;
  if (n == 0) return out;
  for (std::uint64_t p = 2; p <= 1000000 && BigInt(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) {
    if (n > BigInt(std::numeric_limits<std::uint64_t>::max()))
      throw Unsupported("prime_divisors: cofactor exceeds 64 bits");
    auto c = n.convert_to<std::uint64_t>();
    if (!is_prime(c) && c > 1000000ULL * 1000000ULL)
      throw Unsupported("prime_divisors: composite cofactor beyond trial-division range");
    out.push_back(c);
  }
  return out;
}

}  // namespace adelic
