#include "doctest.h"

#include "adelic/errors.hpp"
#include "adelic/window.hpp"
#include "support.hpp"

using namespace adelic;
using namespace adelic::testing;

TEST_CASE("window parsing and evaluation") {
  CHECK(Window::parse("gaussian")(0.0) == Complex(1.0));
  CHECK(Window::parse("box:2")(1.5) == Complex(1.0));
  CHECK(Window::parse("box:2")(2.5) == Complex(0.0));
  CHECK(Window::parse("bspline:2")(1.0).real() == doctest::Approx(1.0));
  CHECK(Window::parse("bspline:3")(1.5).real() == doctest::Approx(0.75));
  CHECK_THROWS_AS(Window::parse("triangle"), InvalidArgument);
  CHECK_THROWS_AS(Window::parse("box:-1"), InvalidArgument);
  CHECK_THROWS_AS(Window::parse("bspline:0"), InvalidArgument);
  auto w = random_combo(3);
  auto back = Window::from_json(w.to_json());
  for (double t : {-1.3, 0.1, 0.77, 2.2}) CHECK(std::abs(back(t) - w(t)) < 1e-15);
  CHECK(Window::from_json(Window::gaussian().to_json()).is_atomic());
}

TEST_CASE("b-splines integrate to one") {
  for (int n = 1; n <= 5; ++n) {
    Window w = Window::bspline(n);
    Complex s = integrate_pointwise([&](double t) { return w(t); }, 0.0, n, window_cuts(w));
    CHECK(s.real() == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("time-frequency shifts act pointwise") {
  for (int i = 0; i < 20; ++i) {
    auto w = random_combo(3);
    double a = uniform_real(-2, 2), b = uniform_real(-2, 2), t = uniform_real(-3, 3);
    CHECK(std::abs(w.shifted(a, b)(t) - expi_turns(b * t) * w(t - a)) < 1e-13);
  }
}

TEST_CASE("documented inner product values") {
  auto g = Window::gaussian();
  CHECK(std::abs(tf_inner_product_real(g, g, 0, 0, 1e-12) - Complex(M_SQRT1_2)) < 1e-15);
  Complex v = tf_inner_product_real(g, g, 1, 1, 1e-12);
  CHECK(std::abs(v - Complex(-M_SQRT1_2 * std::exp(-M_PI))) < 1e-15);
  CHECK(std::abs(v.real() - (-0.0305570)) < 5e-7);  // printed to 7 places
  auto box = Window::box(1.0);
  for (int m : {-3, -1, 1, 2, 7}) CHECK(std::abs(tf_inner_product_real(box, box, 0, m, 1e-12)) < 1e-15);
  CHECK(std::abs(tf_inner_product_real(box, box, 0, 0, 1e-12) - Complex(1.0)) < 1e-15);
}

TEST_CASE("Gaussian closed form matches quadrature on a 7x7 grid") {
  auto g = Window::gaussian();
  for (int i = -3; i <= 3; ++i) {
    for (int j = -3; j <= 3; ++j) {
      Complex closed = tf_inner_product_real(g, g, i, j, 1e-12);
      CHECK(std::abs(closed - tf_oracle(g, g, i, j)) < 1e-10);
    }
  }
}

TEST_CASE("combinations match the quadrature oracle") {
  for (int i = 0; i < 40; ++i) {
    auto w1 = random_combo(2), w2 = random_combo(2);
    double a = uniform_real(-2, 2), b = uniform_real(-3, 3);
    Complex v = tf_inner_product_real(w1, w2, a, b, 1e-11);
    CHECK(std::abs(v - tf_oracle(w1, w2, a, b)) < 1e-9);
  }
}

TEST_CASE("covariance relation") {
  for (int i = 0; i < 30; ++i) {
    auto w1 = random_combo(2), w2 = random_combo(2);
    double a = uniform_real(-2, 2), b = uniform_real(-2, 2);
    Complex lhs = tf_inner_product_real(w1, w2, a, b, 1e-11);
    Complex rhs = std::conj(tf_inner_product_real(w2, w1, -a, -b, 1e-11)) * expi_turns(-a * b);
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("envelopes dominate correlations") {
  for (int i = 0; i < 200; ++i) {
    auto w1 = random_combo(2), w2 = random_combo(2);
    double a = uniform_real(-4, 4), b = uniform_real(-6, 6);
    double env = tf_envelope(w1, w2, a, b);
    CHECK(std::abs(tf_inner_product_real(w1, w2, a, b, 1e-11)) <= env * (1 + 1e-9) + 1e-11);
  }
}

TEST_CASE("lattice tail bounds") {
  auto g = Window::gaussian();
  double sa = M_SQRT2, sb = M_SQRT2;
  for (long long R : {1LL, 2LL, 4LL}) {
    double tail = tf_envelope_tail(g, g, sa, sb, R);
    double ring = 0.0;
    for (long long k = -R - 8; k <= R + 8; ++k)
      for (long long l = -R - 8; l <= R + 8; ++l)
        if (std::max(std::llabs(k), std::llabs(l)) > R) ring += std::abs(tf_inner_product_real(g, g, k * sa, l * sb, 1e-13));
    CHECK(ring <= tail * (1 + 1e-12));
    CHECK(tail <= ring * 1.001 + 1e-15);  // the Gaussian envelope is exact
  }
  // orthonormal box system: every omitted coefficient vanishes structurally
  CHECK(tf_envelope_tail(Window::box(1), Window::box(1), 1.0, 1.0, 3) == 0.0);
  CHECK(std::isinf(tf_envelope_tail(Window::box(1), Window::box(1), 1.0, 0.5, 3)));
  CHECK(std::isinf(tf_envelope_tail(Window::box(1), g, 1.0, 1.0, 3)));
  // cubic splines are summable
  auto s3 = Window::bspline(3);
  double t3 = tf_envelope_tail(s3, s3, 0.5, 0.5, 6);
  CHECK(std::isfinite(t3));
  double ring = 0.0;
  for (long long k = -12; k <= 12; ++k)
    for (long long l = -12; l <= 12; ++l)
      if (std::max(std::llabs(k), std::llabs(l)) > 6) ring += std::abs(tf_inner_product_real(s3, s3, k * 0.5, l * 0.5, 1e-12));
  CHECK(ring <= t3);
  // combos with Gaussians and splines
  for (int i = 0; i < 5; ++i) {
    auto w = random_combo(2, true) + Window::bspline(4) * Complex(0.5);
    double tail = tf_envelope_tail(w, w, 0.8, 0.9, 3);
    double sum = 0.0;
    for (long long k = -7; k <= 7; ++k)
      for (long long l = -7; l <= 7; ++l)
        if (std::max(std::llabs(k), std::llabs(l)) > 3) sum += std::abs(tf_inner_product_real(w, w, k * 0.8, l * 0.9, 1e-12));
    CHECK(sum <= tail);
  }
}
