#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adelic {

using BigInt = boost::multiprecision::cpp_int;
using Prime = std::uint64_t;

/// Exact arbitrary-precision fraction kept in lowest terms with a positive
/// denominator. Zero is 0/1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(BigInt n) : num_(std::move(n)), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(BigInt n, BigInt d);

  /// Parses "a/b", "a", or a finite decimal such as "-1.25".
  static Rational parse(std::string_view text);

  /// Best rational approximation with denominator <= max_den (continued
  /// fractions); returns nullopt unless it lies within rel_tol of x.
  static std::optional<Rational> promote(double x, double rel_tol = 1e-12, long long max_den = 1000);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

  BigInt floor() const;
  BigInt ceil() const;
  /// x - floor(x), in [0, 1).
  Rational frac() const;
  Rational abs() const { return num_ < 0 ? -*this : *this; }
  Rational inverse() const;

  double to_double() const;
  std::string str() const;

  Rational operator-() const { return Rational(-num_, den_, Canonical{}); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  std::size_t hash() const;

 private:
  struct Canonical {};
  Rational(BigInt n, BigInt d, Canonical) : num_(std::move(n)), den_(std::move(d)) {}
  void normalize();

  BigInt num_;
  BigInt den_;
};

Rational pow(const Rational& base, long long exponent);
BigInt ipow(const BigInt& base, unsigned exponent);

/// Non-negative residue of a modulo m (m > 0).
BigInt mod(const BigInt& a, const BigInt& m);
/// Inverse of a modulo m; throws InvalidArgument when gcd(a, m) != 1.
BigInt mod_inverse(const BigInt& a, const BigInt& m);

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n);
/// Throws InvalidArgument when p is not prime.
void require_prime(Prime p);
/// Distinct prime divisors in increasing order. Trial division up to 10^6,
/// then a primality test on the cofactor; throws Unsupported if a cofactor
/// above 2^64 remains unfactored.
std::vector<Prime> prime_divisors(BigInt n);

}  // namespace adelic

template <>
struct std::hash<adelic::Rational> {
  std::size_t operator()(const adelic::Rational& r) const noexcept { return r.hash(); }
};
