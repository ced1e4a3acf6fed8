#include "doctest.h"

#include "adelic/errors.hpp"
#include "adelic/padic_function.hpp"
#include "support.hpp"

using namespace adelic;
using namespace adelic::testing;

namespace {
Rational R(const char* s) { return Rational::parse(s); }
}  // namespace

TEST_CASE("balls are stored with canonical centers") {
  PAdicBall b(2, Rational(5), 1);
  CHECK(b.center() == Rational(1));
  CHECK(b.measure() == R("1/2"));
  CHECK(b == PAdicBall(2, R("1/3"), 1));  // 1/3 = 1 mod 2 Z_2
  CHECK(PAdicBall(2, R("3/8"), -2).center() == R("1/8"));
  CHECK(PAdicBall(3, R("7/9"), -1).contains(R("1/9")));
  CHECK_FALSE(PAdicBall(3, R("7/9"), 0).contains(R("1/9")));
  CHECK(PAdicBall::unit(2).contains(PAdicBall(2, Rational(3), 2)));
  CHECK_FALSE(intersect(PAdicBall(2, Rational(0), 1), PAdicBall(2, Rational(1), 1)));
  CHECK(PAdicBall::unit(5).children(1).size() == 5);
}

TEST_CASE("character integral over balls") {
  CHECK(char_ball_integral(Rational(0), PAdicBall::unit(7)) == Cyclotomic(Rational(1)));
  CHECK(char_ball_integral(R("1/2"), PAdicBall::unit(2)).is_zero());
  CHECK(char_ball_integral(R("1/2"), PAdicBall(2, Rational(0), 1)) == Cyclotomic(R("1/2")));
  // fixed-level Riemann sums with m = 6 reproduce the same values
  for (auto [r, center, level] : {std::tuple{R("1/2"), Rational(0), 0LL}, std::tuple{R("1/2"), Rational(0), 1LL}}) {
    PAdicBall ball(2, center, level);
    std::complex<double> sum{0.0, 0.0};
    for (const auto& c : ball.children(6 - level)) sum += std::polar(1.0 / 64, 2 * M_PI * padic_fractional_part(r * c.center(), 2).to_double());
    CHECK(std::abs(sum - char_ball_integral(r, ball).value()) < 1e-14);
  }
}

TEST_CASE("character integral agrees exactly with the Riemann-sum oracle") {
  for (Prime p : {2ULL, 3ULL, 5ULL}) {
    for (int i = 0; i < 60; ++i) {
      Rational r = random_p_rational(p, 40, 4);
      PAdicBall ball(p, random_p_rational(p, 40, 3), uniform(-3, 3));
      CHECK(matches_riemann(char_ball_integral(r, ball), riemann_char_integral(r, ball)));
    }
  }
}

TEST_CASE("time-frequency shifts on Q_p") {
  auto one = PAdicTestFunction::unit(2);
  CHECK(equals(one.shifted(Rational(0), Rational(0)), one));
  CHECK(equals(one.shifted(R("1/2"), Rational(0)), PAdicTestFunction::indicator(PAdicBall(2, R("1/2"), 0))));
  CHECK(equals(one.shifted(Rational(3), Rational(5)), one));  // integers act trivially on 1_{Z_p}

  for (int i = 0; i < 50; ++i) {
    Prime p = small_primes()[static_cast<std::size_t>(uniform(0, 2))];
    auto f = random_test_function(p);
    Rational x = random_p_rational(p, 30, 3), r = random_p_rational(p, 30, 3);
    Rational t = random_p_rational(p, 60, 4);
    auto g = f.shifted(x, r);
    Cyclotomic expected = f(t - x).rotated(Phase(-padic_fractional_part(r * t, p)));
    CHECK(g(t) == expected);
  }
}

TEST_CASE("modulation and translation commute up to an exact phase") {
  for (int i = 0; i < 30; ++i) {
    Prime p = small_primes()[static_cast<std::size_t>(uniform(0, 2))];
    auto f = random_test_function(p);
    Rational x = random_p_rational(p, 30, 3), r = random_p_rational(p, 30, 3);
    // E_r T_x f = exp(-2 pi i {r x}_p) T_x E_r f
    auto lhs = f.shifted(x, r);
    auto rhs = f.shifted(Rational(0), r).shifted(x, Rational(0)) *
               Cyclotomic::root(-padic_fractional_part(r * x, p));
    CHECK(equals(lhs, rhs));
    Rational t = random_p_rational(p, 60, 4);
    CHECK(lhs(t) == rhs(t));
  }
}

TEST_CASE("inner products on Q_p") {
  auto one = PAdicTestFunction::unit(2);
  CHECK(inner_product_padic(PAdicTestFunction::unit(3), PAdicTestFunction::unit(3)) == Cyclotomic(Rational(1)));
  CHECK(inner_product_padic(one, one.shifted(R("1/2"), Rational(0))).is_zero());
  CHECK(inner_product_padic(one, one.shifted(Rational(1), Rational(1))) == Cyclotomic(Rational(1)));
  CHECK(inner_product_padic(one, one.shifted(Rational(0), R("1/2"))).is_zero());
  CHECK_THROWS_AS(inner_product_padic(one, PAdicTestFunction::unit(3)), InvalidArgument);
}

TEST_CASE("inner product is a positive exact form") {
  for (int i = 0; i < 40; ++i) {
    Prime p = small_primes()[static_cast<std::size_t>(uniform(0, 2))];
    auto f = random_test_function(p);
    Cyclotomic ff = inner_product_padic(f, f);
    CHECK(ff == ff.conj());
    CHECK(ff.value().real() >= 0.0);
    Cyclotomic l2;
    auto fc = f.canonical();
    for (const auto& term : fc.terms()) l2 += term.coeff.norm_squared() * term.ball.measure();
    CHECK(ff == l2);
    auto g = random_test_function(p);
    CHECK(inner_product_padic(g, f) == inner_product_padic(f, g).conj());
  }
}

TEST_CASE("shifts are unitary") {
  for (int i = 0; i < 40; ++i) {
    Prime p = small_primes()[static_cast<std::size_t>(uniform(0, 2))];
    auto f = random_test_function(p), g = random_test_function(p);
    Rational x = random_p_rational(p, 30, 3), r = random_p_rational(p, 30, 3);
    CHECK(inner_product_padic(f.shifted(x, r), g.shifted(x, r)) == inner_product_padic(f, g));
  }
}

TEST_CASE("unit indicator against its shifts over Z[1/p]") {
  // <1_{Z_p}, E_r T_q 1_{Z_p}> = 1 iff q, r are integers, else 0
  for (Prime p : {2ULL, 3ULL}) {
    auto one = PAdicTestFunction::unit(p);
    BigInt top = ipow(BigInt(p), 5);
    for (int i = 0; i < 400; ++i) {
      Rational q(BigInt(uniform(-200, 200)), ipow(BigInt(p), static_cast<unsigned>(uniform(0, 5))));
      Rational r(BigInt(uniform(-200, 200)), ipow(BigInt(p), static_cast<unsigned>(uniform(0, 5))));
      Cyclotomic v = inner_product_padic(one, one.shifted(q, r));
      if (q.is_integer() && r.is_integer()) {
        CHECK(v == Cyclotomic(Rational(1)));
      } else {
        CHECK(v.is_zero());
      }
    }
  }
}

TEST_CASE("canonical form") {
  auto f = random_test_function(3);
  auto zero = f + f * Cyclotomic(Rational(-1));
  CHECK(zero.canonical().terms().empty());
  CHECK(equals(f, f.canonical()));
  CHECK(equals(f.canonical(), f.canonical().canonical()));
  // disjoint balls after canonicalization
  auto c = (f + random_test_function(3)).canonical();
  for (std::size_t i = 0; i < c.terms().size(); ++i)
    for (std::size_t j = i + 1; j < c.terms().size(); ++j)
      CHECK((c.terms()[i].ball == c.terms()[j].ball || !intersect(c.terms()[i].ball, c.terms()[j].ball)));
  CHECK(PAdicTestFunction::unit(5).is_unit_indicator());
  CHECK_FALSE(PAdicTestFunction::unit(5).shifted(Rational(0), R("1/5")).is_unit_indicator());
}

TEST_CASE("S0 norms of finite expansions") {
  S0ZpSeries single{2, {{PrueferElement::from_rational(R("1/4"), 2), {3.0, 4.0}}}};
  CHECK(s0_norm(single) == doctest::Approx(5.0));
  S0ZpSeries one{3, {{PrueferElement(3, 0, 0), {1.0, 0.0}}}};
  CHECK(s0_norm(one) == 1.0);
  CHECK(one(R("5/7")) == std::complex<double>(1.0, 0.0));
  S0ZpSeries two{2, {{PrueferElement(2, 0, 0), {1.0, 0.0}}, {PrueferElement(2, 1, 1), {0.0, -1.0}}}};
  CHECK(s0_norm_qp({{Rational(0), two}, {R("1/2"), two}}) == doctest::Approx(4.0));
}
