#pragma once

#include "adelic/numerics.hpp"

#include <nlohmann/json.hpp>

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace adelic {

/// Atomic real-valued window shapes.
struct BaseWindow {
  enum class Kind { Gaussian, Box, BSpline };
  Kind kind = Kind::Gaussian;
  double width = 1.0;  // box length
  int order = 1;       // spline order; support [0, order]

  static BaseWindow gaussian() { return {}; }
  static BaseWindow box(double gamma);
  static BaseWindow bspline(int n);

  double operator()(double t) const;
  /// Closed support, infinite bounds for the Gaussian.
  std::pair<double, double> support() const;
  /// Points where the shape is not smooth.
  std::vector<double> breakpoints() const;
  bool compact() const { return kind != Kind::Gaussian; }
  /// Box(1) and BSpline(1) are the same function.
  bool boxlike() const { return kind == Kind::Box || (kind == Kind::BSpline && order == 1); }
  double box_length() const { return kind == Kind::Box ? width : 1.0; }
  std::string str() const;

  friend bool operator==(const BaseWindow&, const BaseWindow&) = default;
};

/// coeff * E_freq T_shift base, i.e. t -> coeff exp(2 pi i freq t) base(t - shift).
struct WindowAtom {
  Complex coeff;
  double shift = 0.0;
  double freq = 0.0;
  BaseWindow base;
};

/// A window on the real line: a finite combination of time-frequency shifted
/// atomic shapes. Gaussian, Box and BSpline are single atoms.
class Window {
 public:
  Window() = default;  // the zero window
  explicit Window(BaseWindow base) : atoms_{WindowAtom{1.0, 0.0, 0.0, base}} {}
  explicit Window(std::vector<WindowAtom> atoms);

  static Window gaussian() { return Window(BaseWindow::gaussian()); }
  static Window box(double gamma) { return Window(BaseWindow::box(gamma)); }
  static Window bspline(int n) { return Window(BaseWindow::bspline(n)); }
  /// "gaussian", "box:1.0", "bspline:3".
  static Window parse(const std::string& spec);
  static Window from_json(const nlohmann::json& j);

  const std::vector<WindowAtom>& atoms() const { return atoms_; }
  bool is_zero() const { return atoms_.empty(); }
  bool is_atomic() const;

  Complex operator()(double t) const;
  /// E_b T_a applied to this window.
  Window shifted(double a, double b) const;
  Window operator*(Complex c) const;
  Window operator+(const Window& other) const;
  Window operator-(const Window& other) const { return *this + other * Complex(-1.0); }

  /// Interval outside which |w(t)| < eps.
  std::pair<double, double> essential_support(double eps) const;
  /// Sum of |coeff| over atoms.
  double coeff_l1() const;
  std::string str() const;
  nlohmann::json to_json() const;

 private:
  std::vector<WindowAtom> atoms_;
};

/// <w1, E_b T_a w2> = integral of w1(t) conj(exp(2 pi i b t) w2(t - a)) dt,
/// accurate to tol. Throws AccuracyError when quadrature cannot reach tol.
Complex tf_inner_product_real(const Window& w1, const Window& w2, double a, double b, double tol);

/// Same for atomic shapes.
Complex base_tf_inner_product(const BaseWindow& g1, const BaseWindow& g2, double a, double b, double tol);

/// Upper bound for |<w1, E_b T_a w2>|.
double tf_envelope(const Window& w1, const Window& w2, double a, double b);
double base_tf_envelope(const BaseWindow& g1, const BaseWindow& g2, double a, double b);

/// Upper bound for the sum of |<w1, E_{l*step_b} T_{k*step_a} w2>| over all
/// (k, l) with max(|k|, |l|) > radius. Infinite when the envelopes are not
/// summable over the lattice.
double tf_envelope_tail(const Window& w1, const Window& w2, double step_a, double step_b, long long radius);

/// Same sum, bounded more tightly: rings radius < max(|k|, |l|) <= R are
/// evaluated (with a rounding allowance per term) and the envelope tail is used
/// beyond R. R grows until that envelope tail drops below target / 1000.
double tf_certified_tail(const Window& w1, const Window& w2, double step_a, double step_b, long long radius,
                         double target);

constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace adelic
