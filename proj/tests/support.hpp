#pragma once

// Test-only helpers: seeded generators and independent oracles.

#include "adelic/cyclotomic.hpp"
#include "adelic/padic.hpp"
#include "adelic/padic_function.hpp"
#include "adelic/rational.hpp"

#include <random>
#include <vector>

namespace adelic::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611ULL);
  return gen;
}

inline long long uniform(long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng());
}

inline double uniform_real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

/// Random rational with |numerator| <= num_bound and denominator in [1, den_bound].
inline Rational random_rational(long long num_bound, long long den_bound) {
  return Rational(BigInt(uniform(-num_bound, num_bound)), BigInt(uniform(1, den_bound)));
}

/// Random element of Z[1/p] with denominator p^e, e <= max_exp.
inline Rational random_p_rational(Prime p, long long num_bound, int max_exp) {
  int e = static_cast<int>(uniform(0, max_exp));
  return Rational(BigInt(uniform(-num_bound, num_bound)), ipow(BigInt(p), static_cast<unsigned>(e)));
}

/// Digit-extraction oracle for {x}_p: expand the unit part digit by digit
/// (each digit found by brute-force search mod p) and keep the digits at
/// negative positions.
inline Rational fractional_part_by_digits(const Rational& x, Prime p) {
  if (x.is_zero()) return Rational(0);
  BigInt a = x.num();
  BigInt b = x.den();
  long long v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  while (b % p == 0) {
    b /= p;
    --v;
  }
  if (v >= 0) return Rational(0);
  Rational u(a, b);  // unit in Z_p
  Rational result;
  Rational place = pow(Rational(static_cast<long long>(p)), v);
  for (long long i = v; i < 0; ++i) {
    // digit d with u - d divisible by p, i.e. num(u) - d den(u) = 0 mod p
    BigInt un = u.num() % p;
    if (un < 0) un += p;
    BigInt ud = u.den() % p;
    long long digit = -1;
    for (long long d = 0; d < static_cast<long long>(p); ++d) {
      BigInt r = (un - ud * d) % p;
      if (r == 0) {
        digit = d;
        break;
      }
    }
    result += place * Rational(digit);
    u = (u - Rational(digit)) / Rational(static_cast<long long>(p));
    place *= Rational(static_cast<long long>(p));
  }
  return result;
}

inline const std::vector<Prime>& small_primes() {
  static const std::vector<Prime> ps{2, 3, 5, 7, 11};
  return ps;
}

/// Random exact test function on Q_p with a few terms.
inline PAdicTestFunction random_test_function(Prime p, int max_terms = 3) {
  std::vector<PAdicTerm> terms;
  int n = static_cast<int>(uniform(1, max_terms));
  for (int i = 0; i < n; ++i) {
    Rational turn(BigInt(uniform(0, 11)), BigInt(12));
    Rational weight(BigInt(uniform(1, 5)), BigInt(uniform(1, 3)));
    terms.push_back(PAdicTerm{Cyclotomic::root(turn, weight), random_p_rational(p, 20, 3),
                              PAdicBall(p, random_p_rational(p, 20, 2), uniform(-2, 2))});
  }
  return PAdicTestFunction(p, std::move(terms));
}

/// Riemann-sum oracle for the integral of exp(2 pi i {r t}_p) over a ball.
///
/// The ball is cut into cosets of p^m Z_p with m large enough that the
/// character is constant on each; the sum of the coset values is collected
/// as an integer polynomial in zeta_D (D = p^E) and reduced modulo the
/// cyclotomic polynomial Phi_D, which gives an exact canonical form. The
/// value of each coset is found with the digit oracle above.
struct RiemannSum {
  Prime p = 2;
  long long level_m = 0;          // coset level; every count carries weight p^{-m}
  unsigned exponent = 0;          // D = p^exponent
  std::vector<long long> counts;  // reduced coefficients of zeta_D^i
};

inline void reduce_mod_cyclotomic(std::vector<long long>& c, Prime p, unsigned exponent) {
  if (exponent == 0) return;
  long long block = 1;
  for (unsigned i = 1; i < exponent; ++i) block *= static_cast<long long>(p);
  const long long top = (static_cast<long long>(p) - 1) * block;
  for (long long i = static_cast<long long>(c.size()) - 1; i >= top; --i) {
    long long v = c[static_cast<std::size_t>(i)];
    if (v == 0) continue;
    c[static_cast<std::size_t>(i)] = 0;
    for (long long j = 1; j < static_cast<long long>(p); ++j) c[static_cast<std::size_t>(i - j * block)] -= v;
  }
}

inline unsigned p_exponent(const BigInt& den, Prime p) {
  BigInt d = den;
  unsigned e = 0;
  while (d % p == 0) {
    d /= p;
    ++e;
  }
  return e;
}

inline RiemannSum riemann_char_integral(const Rational& r, const PAdicBall& ball) {
  const Prime p = ball.prime();
  const long long k = ball.level();
  RiemannSum out;
  out.p = p;
  long long vr = 0;
  if (!r.is_zero()) {
    BigInt a = r.num(), b = r.den();
    while (a % p == 0) { a /= p; ++vr; }
    while (b % p == 0) { b /= p; --vr; }
  }
  long long m = r.is_zero() ? k : std::max(k, -vr);
  out.level_m = m;
  Rational pk = pow(Rational(static_cast<long long>(p)), k);
  Rational tau0 = fractional_part_by_digits(r * ball.center(), p);
  Rational step = fractional_part_by_digits(r * pk, p);
  unsigned e = std::max(p_exponent(tau0.den(), p), p_exponent(step.den(), p));
  out.exponent = e;
  BigInt D = ipow(BigInt(p), e);
  auto Dl = D.convert_to<long long>();
  out.counts.assign(static_cast<std::size_t>(Dl), 0);
  auto i0 = (tau0 * Rational(D)).num().convert_to<long long>();
  auto di = (step * Rational(D)).num().convert_to<long long>();
  long long cosets = ipow(BigInt(p), static_cast<unsigned>(m - k)).convert_to<long long>();
  long long idx = i0 % Dl;
  for (long long j = 0; j < cosets; ++j) {
    out.counts[static_cast<std::size_t>(idx)] += 1;
    idx = (idx + di) % Dl;
  }
  reduce_mod_cyclotomic(out.counts, p, e);
  return out;
}

/// Exact comparison of a closed-form result (zero or one weighted root of
/// unity) with the oracle's reduced polynomial.
inline bool matches_riemann(const Cyclotomic& value, const RiemannSum& oracle) {
  std::vector<long long> expected(oracle.counts.size(), 0);
  if (!value.is_zero()) {
    BigInt D = ipow(BigInt(oracle.p), oracle.exponent);
    for (const auto& [turn, weight] : value.terms()) {
      Rational scaled = weight * pow(Rational(static_cast<long long>(oracle.p)), oracle.level_m);
      if (!scaled.is_integer()) return false;
      Rational idx = turn * Rational(D);
      if (!idx.is_integer()) return false;
      expected[static_cast<std::size_t>(idx.num().convert_to<long long>())] += scaled.num().convert_to<long long>();
    }
    reduce_mod_cyclotomic(expected, oracle.p, oracle.exponent);
  }
  return expected == oracle.counts;
}

}  // namespace adelic::testing

#include "adelic/window.hpp"

#include <boost/math/quadrature/gauss.hpp>

namespace adelic::testing {

/// Composite fixed-order Gauss-Legendre over [lo, hi], split at the given
/// breakpoints and into pieces of length <= h. Uses only pointwise values.
template <typename F>
Complex integrate_pointwise(F f, double lo, double hi, std::vector<double> cuts, double h = 0.02) {
  cuts.push_back(lo);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  Complex total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double x0 = std::max(lo, cuts[i]), x1 = std::min(hi, cuts[i + 1]);
    if (x1 <= x0) continue;
    int n = std::max(1, static_cast<int>(std::ceil((x1 - x0) / h)));
    for (int j = 0; j < n; ++j) {
      double u0 = x0 + (x1 - x0) * j / n, u1 = x0 + (x1 - x0) * (j + 1) / n;
      auto re = [&](double t) { return f(t).real(); };
      auto im = [&](double t) { return f(t).imag(); };
      total += Complex(boost::math::quadrature::gauss<double, 20>::integrate(re, u0, u1),
                       boost::math::quadrature::gauss<double, 20>::integrate(im, u0, u1));
    }
  }
  return total;
}

/// Breakpoints of every atom of a window, shifted by `a`.
inline std::vector<double> window_cuts(const Window& w, double a = 0.0) {
  std::vector<double> out;
  for (const auto& at : w.atoms())
    for (double x : at.base.breakpoints()) out.push_back(x + at.shift + a);
  return out;
}

/// <w1, E_b T_a w2> by pointwise quadrature of the defining integral.
inline Complex tf_oracle(const Window& w1, const Window& w2, double a, double b) {
  auto [l1, h1] = w1.essential_support(1e-18);
  auto [l2, h2] = w2.essential_support(1e-18);
  double lo = std::max(l1, l2 + a), hi = std::min(h1, h2 + a);
  if (hi <= lo) return 0.0;
  auto cuts = window_cuts(w1);
  auto more = window_cuts(w2, a);
  cuts.insert(cuts.end(), more.begin(), more.end());
  double h = std::min(0.02, 0.1 / (1.0 + std::abs(b)));
  return integrate_pointwise([&](double t) { return w1(t) * std::conj(expi_turns(b * t) * w2(t - a)); }, lo, hi,
                             cuts, h);
}

inline Window random_combo(int max_atoms = 3, bool gaussian_only = false, double spread = 1.5) {
  std::vector<WindowAtom> atoms;
  int n = static_cast<int>(uniform(1, max_atoms));
  for (int i = 0; i < n; ++i) {
    BaseWindow base = BaseWindow::gaussian();
    if (!gaussian_only) {
      switch (uniform(0, 3)) {
        case 0: base = BaseWindow::box(uniform_real(0.5, 2.0)); break;
        case 1: base = BaseWindow::bspline(static_cast<int>(uniform(2, 4))); break;
        default: break;
      }
    }
    atoms.push_back(WindowAtom{{uniform_real(-1, 1), uniform_real(-1, 1)}, uniform_real(-spread, spread),
                               uniform_real(-spread, spread), base});
  }
  return Window(std::move(atoms));
}

}  // namespace adelic::testing

#include "adelic/gabor_real.hpp"

namespace adelic::testing {

/// (S f)(t) = sum over |n|, |m| <= R of <f, E_{m beta} T_{n alpha} g> (E_{m beta} T_{n alpha} g)(t),
/// the defining series of the frame operator, truncated.
inline std::vector<Complex> brute_frame_operator(const Window& g, const RectLattice& lat, const Window& f,
                                                 const std::vector<double>& points, long long R = 12) {
  std::vector<Complex> out(points.size());
  for (long long n = -R; n <= R; ++n) {
    for (long long m = -R; m <= R; ++m) {
      Complex c = tf_inner_product_real(f, g, n * lat.alpha, m * lat.beta, 1e-14);
      if (std::abs(c) < 1e-300) continue;
      for (std::size_t i = 0; i < points.size(); ++i) {
        double t = points[i];
        out[i] += c * expi_turns(m * lat.beta * t) * g(t - n * lat.alpha);
      }
    }
  }
  return out;
}

inline std::vector<double> sample_points(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * (i + 0.5) / n);
  return out;
}

/// max over |k|, |l| <= R of |<h, E_{l/alpha} T_{k/beta} g> - alpha beta delta|.
inline double wr_residual(const Window& g, const Window& h, const RectLattice& lat, long long R) {
  double mx = 0.0;
  for (long long k = -R; k <= R; ++k) {
    for (long long l = -R; l <= R; ++l) {
      Complex v = tf_inner_product_real(h, g, k / lat.beta, l / lat.alpha, 1e-13);
      Complex e = (k == 0 && l == 0) ? Complex(lat.density()) : Complex(0.0);
      mx = std::max(mx, std::abs(v - e));
    }
  }
  return mx;
}

}  // namespace adelic::testing
