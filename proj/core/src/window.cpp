#include "adelic/window.hpp"

#include "adelic/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <tuple>
#include <sstream>

namespace adelic {

namespace {

constexpr double kGaussReach = 9.0;  // exp(-pi * 81) is far below double resolution

double bspline_value(int n, double t) {
  if (t < 0.0 || t >= n) return 0.0;
  if (n == 1) return 1.0;
  return (t * bspline_value(n - 1, t) + (n - t) * bspline_value(n - 1, t - 1.0)) / (n - 1);
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

BaseWindow BaseWindow::box(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("box window needs a positive length");
  return BaseWindow{Kind::Box, gamma, 1};
}

BaseWindow BaseWindow::bspline(int n) {
  if (n < 1 || n > 16) throw InvalidArgument("bspline order must be in [1, 16]");
  return BaseWindow{Kind::BSpline, 1.0, n};
}

double BaseWindow::operator()(double t) const {
  switch (kind) {
    case Kind::Gaussian: return std::exp(-M_PI * t * t);
    case Kind::Box: return (t >= 0.0 && t < width) ? 1.0 : 0.0;
    case Kind::BSpline: return bspline_value(order, t);
  }
  return 0.0;
}

std::pair<double, double> BaseWindow::support() const {
  switch (kind) {
    case Kind::Gaussian: return {-kInfinity, kInfinity};
    case Kind::Box: return {0.0, width};
    case Kind::BSpline: return {0.0, static_cast<double>(order)};
  }
  return {0.0, 0.0};
}

std::vector<double> BaseWindow::breakpoints() const {
  switch (kind) {
    case Kind::Gaussian: return {};
    case Kind::Box: return {0.0, width};
    case Kind::BSpline: {
      std::vector<double> out;
      for (int j = 0; j <= order; ++j) out.push_back(j);
      return out;
    }
  }
  return {};
}

std::string BaseWindow::str() const {
  switch (kind) {
    case Kind::Gaussian: return "gaussian";
    case Kind::Box: return "box:" + format_double(width);
    case Kind::BSpline: return "bspline:" + std::to_string(order);
  }
  return "";
}

Window::Window(std::vector<WindowAtom> atoms) {
  for (auto& a : atoms) {
    if (!std::isfinite(a.coeff.real()) || !std::isfinite(a.coeff.imag()) || !std::isfinite(a.shift) ||
        !std::isfinite(a.freq)) {
      throw InvalidArgument("window atoms must be finite");
    }
    if (a.coeff != Complex(0.0)) atoms_.push_back(a);
  }
}

Window Window::parse(const std::string& spec) {
  auto colon = spec.find(':');
  std::string name = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  try {
    if (name == "gaussian" && arg.empty()) return gaussian();
    if (name == "box") return box(arg.empty() ? 1.0 : std::stod(arg));
    if (name == "bspline") return bspline(arg.empty() ? 2 : std::stoi(arg));
  } catch (const std::logic_error&) {
    // fall through to the error below
  }
  throw InvalidArgument("unknown window spec '" + spec + "'");
}

Window Window::from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse(j.get<std::string>());
  std::vector<WindowAtom> atoms;
  for (const auto& a : j.at("atoms")) {
    Window base = parse(a.at("base").get<std::string>());
    atoms.push_back(WindowAtom{{a.at("re").get<double>(), a.at("im").get<double>()},
                               a.at("shift").get<double>(),
                               a.at("freq").get<double>(),
                               base.atoms().front().base});
  }
  return Window(std::move(atoms));
}

bool Window::is_atomic() const {
  return atoms_.size() == 1 && atoms_[0].coeff == Complex(1.0) && atoms_[0].shift == 0.0 && atoms_[0].freq == 0.0;
}

Complex Window::operator()(double t) const {
  CompensatedSum<Complex> s;
  for (const auto& a : atoms_) {
    double v = a.base(t - a.shift);
    if (v != 0.0) s.add(a.coeff * expi_turns(a.freq * t) * v);
  }
  return s.value();
}

Window Window::shifted(double a, double b) const {
  // E_b T_a E_f T_s = exp(-2 pi i a f) E_{b+f} T_{a+s}
  std::vector<WindowAtom> out;
  out.reserve(atoms_.size());
  for (const auto& at : atoms_) {
    out.push_back(WindowAtom{at.coeff * expi_turns(-a * at.freq), at.shift + a, at.freq + b, at.base});
  }
  return Window(std::move(out));
}

Window Window::operator*(Complex c) const {
  std::vector<WindowAtom> out = atoms_;
  for (auto& a : out) a.coeff *= c;
  return Window(std::move(out));
}

Window Window::operator+(const Window& other) const {
  // atoms whose positions agree to ~1e-12 are merged
  using Key = std::tuple<int, double, int, double, double>;
  auto key = [](const WindowAtom& a) {
    constexpr double scale = 1099511627776.0;  // 2^40
    return Key{static_cast<int>(a.base.kind), a.base.width, a.base.order, std::nearbyint(a.shift * scale),
               std::nearbyint(a.freq * scale)};
  };
  std::vector<WindowAtom> out = atoms_;
  std::map<Key, std::size_t> index;
  for (std::size_t i = 0; i < out.size(); ++i) index.emplace(key(out[i]), i);
  for (const auto& b : other.atoms_) {
    auto [it, inserted] = index.emplace(key(b), out.size());
    if (inserted) {
      out.push_back(b);
    } else {
      out[it->second].coeff += b.coeff;
    }
  }
  return Window(std::move(out));
}

std::pair<double, double> Window::essential_support(double eps) const {
  if (atoms_.empty()) return {0.0, 0.0};
  double lo = kInfinity, hi = -kInfinity;
  double n = static_cast<double>(atoms_.size());
  for (const auto& a : atoms_) {
    auto [s0, s1] = a.base.support();
    if (a.base.compact()) {
      lo = std::min(lo, s0 + a.shift);
      hi = std::max(hi, s1 + a.shift);
    } else {
      double c = std::abs(a.coeff) * n / eps;
      double r = c > 1.0 ? std::sqrt(std::log(c) / M_PI) : 0.0;
      lo = std::min(lo, a.shift - r);
      hi = std::max(hi, a.shift + r);
    }
  }
  return {lo, hi};
}

double Window::coeff_l1() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += std::abs(a.coeff);
  return s;
}

std::string Window::str() const {
  if (atoms_.empty()) return "zero";
  if (is_atomic()) return atoms_[0].base.str();
  return "combo[" + std::to_string(atoms_.size()) + "]";
}

nlohmann::json Window::to_json() const {
  if (is_atomic()) return atoms_[0].base.str();
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& a : atoms_) {
    arr.push_back({{"base", a.base.str()}, {"re", a.coeff.real()}, {"im", a.coeff.imag()},
                   {"shift", a.shift}, {"freq", a.freq}});
  }
  return {{"atoms", arr}};
}

// ---------------------------------------------------------------------------
// inner products

namespace {

Complex box_box(double len1, double len2, double a, double b) {
  double lo = std::max(0.0, a), hi = std::min(len1, a + len2);
  if (hi <= lo) return 0.0;
  double ell = hi - lo;
  if (b == 0.0) return ell;
  // integral of exp(-2 pi i b t) over [lo, hi]
  return expi_turns(-b * (lo + hi) / 2.0) * (boost::math::sin_pi(b * ell) / (M_PI * b));
}

// Adaptive bisection on 31-point Gauss-Kronrod with an absolute tolerance.
template <typename F>
Complex adaptive_gk(const F& f, double x0, double x1, double abs_tol, int depth, double& err_out) {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0;
  Complex v = gauss_kronrod<double, 31>::integrate(f, x0, x1, 0, 0.0, &err);
  err *= (x1 - x0) / 2.0;  // the library reports the error on the reference interval
  if (err <= abs_tol || depth == 0) {
    err_out += err;
    return v;
  }
  double mid = (x0 + x1) / 2.0;
  return adaptive_gk(f, x0, mid, abs_tol / 2.0, depth - 1, err_out) +
         adaptive_gk(f, mid, x1, abs_tol / 2.0, depth - 1, err_out);
}

Complex quadrature(const BaseWindow& g1, const BaseWindow& g2, double a, double b, double tol) {
  auto reach = [](const BaseWindow& g) {
    return g.compact() ? g.support() : std::pair<double, double>{-kGaussReach, kGaussReach};
  };
  auto [s0, s1] = reach(g1);
  auto [t0, t1] = reach(g2);
  double lo = std::max(s0, t0 + a), hi = std::min(s1, t1 + a);
  if (!(hi > lo)) return 0.0;

  std::vector<double> cuts{lo, hi};
  for (double x : g1.breakpoints()) if (x > lo && x < hi) cuts.push_back(x);
  for (double x : g2.breakpoints()) if (x + a > lo && x + a < hi) cuts.push_back(x + a);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // split oscillatory pieces so each carries at most a few periods
  std::vector<double> nodes;
  double period = std::abs(b) > 0.0 ? 1.0 / std::abs(b) : kInfinity;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double len = cuts[i + 1] - cuts[i];
    int pieces = std::isfinite(period) ? std::max(1, static_cast<int>(std::ceil(len / (4.0 * period)))) : 1;
    pieces = std::min(pieces, 4096);
    for (int j = 0; j < pieces; ++j) nodes.push_back(cuts[i] + len * j / pieces);
  }
  nodes.push_back(cuts.back());

  CompensatedSum<Complex> total;
  double err_total = 0.0;
  double piece_tol = tol / static_cast<double>(nodes.size());
  auto f = [&](double t) { return g1(t) * g2(t - a) * expi_turns(-b * t); };
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    double err = 0.0;
    total.add(adaptive_gk(f, nodes[i], nodes[i + 1], piece_tol, 18, err));
    err_total += err;
  }
  Complex v = total.value();
  if (err_total > tol) {
    throw AccuracyError("tf_inner_product_real: quadrature error estimate above tolerance", v.real(), v.imag(),
                        err_total);
  }
  return v;
}

}  // namespace

Complex base_tf_inner_product(const BaseWindow& g1, const BaseWindow& g2, double a, double b, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  using K = BaseWindow::Kind;
  if (g1.kind == K::Gaussian && g2.kind == K::Gaussian) {
    return M_SQRT1_2 * std::exp(-M_PI * (a * a + b * b) / 2.0) * expi_turns(-a * b / 2.0);
  }
  if (g1.boxlike() && g2.boxlike()) return box_box(g1.box_length(), g2.box_length(), a, b);
  if (g1.compact() && g2.compact()) {
    auto [s0, s1] = g1.support();
    auto [t0, t1] = g2.support();
    if (t0 + a >= s1 || t1 + a <= s0) return 0.0;
  }
  return quadrature(g1, g2, a, b, tol);
}

Complex tf_inner_product_real(const Window& w1, const Window& w2, double a, double b, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  const auto& A1 = w1.atoms();
  const auto& A2 = w2.atoms();
  if (A1.empty() || A2.empty()) return 0.0;
  CompensatedSum<Complex> s;
  double scale = 0.0;
  for (const auto& x : A1)
    for (const auto& y : A2) scale += std::abs(x.coeff) * std::abs(y.coeff);
  double pair_tol = tol / std::max(1.0, scale);
  // Gaussian pairs this small cannot move the sum by more than tol / 1000 in total
  double log_negligible = std::log(1e-3 * tol / (static_cast<double>(A1.size()) * static_cast<double>(A2.size())));
  std::vector<double> log1(A1.size()), log2(A2.size());
  for (std::size_t i = 0; i < A1.size(); ++i) log1[i] = std::log(std::abs(A1[i].coeff));
  for (std::size_t j = 0; j < A2.size(); ++j) log2[j] = std::log(std::abs(A2[j].coeff));
  for (std::size_t i = 0; i < A1.size(); ++i) {
    const auto& x = A1[i];
    for (std::size_t j = 0; j < A2.size(); ++j) {
      const auto& y = A2[j];
      double A = a + y.shift - x.shift;
      double B = b + y.freq - x.freq;
      if (x.base.kind == BaseWindow::Kind::Gaussian && y.base.kind == BaseWindow::Kind::Gaussian &&
          log1[i] + log2[j] - M_PI * (A * A + B * B) / 2.0 < log_negligible) {
        continue;
      }
      Complex base = base_tf_inner_product(x.base, y.base, A, B, pair_tol);
      if (base == Complex(0.0)) continue;
      Complex phase = expi_turns(a * y.freq - x.shift * B);
      s.add(x.coeff * std::conj(y.coeff) * phase * base);
    }
  }
  return s.value();
}

// ---------------------------------------------------------------------------
// envelopes

namespace {

double dist_to_interval(double x, double lo, double hi) {
  if (x < lo) return lo - x;
  if (x > hi) return x - hi;
  return 0.0;
}

int decay_order(const BaseWindow& g) { return g.boxlike() ? 1 : g.order; }

// compact shape c against a Gaussian centred at a
double compact_gauss_time(const BaseWindow& c, double a) {
  auto [lo, hi] = c.support();
  double d = dist_to_interval(a, lo, hi);
  return std::min(1.0, (hi - lo) * std::exp(-M_PI * d * d));
}

double compact_gauss_freq(const BaseWindow& c, double b) {
  if (b == 0.0) return 1.0;
  double x = 2.0 / (M_PI * std::abs(b));
  return std::min(1.0, std::pow(x, decay_order(c)) + std::exp(-M_PI * b * b / 4.0));
}

double spline_spline_freq(int s, double b) {
  if (b == 0.0) return 1.0;
  return std::min(1.0, 2.0 * std::pow(2.0 / (M_PI * std::abs(b)), s));
}

bool overlap(const BaseWindow& g1, const BaseWindow& g2, double a) {
  auto [s0, s1] = g1.support();
  auto [t0, t1] = g2.support();
  return t0 + a < s1 && t1 + a > s0;
}

}  // namespace

double base_tf_envelope(const BaseWindow& g1, const BaseWindow& g2, double a, double b) {
  using K = BaseWindow::Kind;
  if (g1.kind == K::Gaussian && g2.kind == K::Gaussian) {
    return M_SQRT1_2 * std::exp(-M_PI * (a * a + b * b) / 2.0);
  }
  if (g1.kind == K::Gaussian) return base_tf_envelope(g2, g1, -a, -b);
  if (g2.kind == K::Gaussian) return std::min(compact_gauss_time(g1, a), compact_gauss_freq(g1, b));
  if (!overlap(g1, g2, a)) return 0.0;
  if (g1.boxlike() && g2.boxlike()) return std::abs(box_box(g1.box_length(), g2.box_length(), a, b));
  if (!g1.boxlike() && !g2.boxlike()) return spline_spline_freq(std::min(g1.order, g2.order), b);
  return std::sqrt(g1.boxlike() ? g1.box_length() : g2.box_length());
}

double tf_envelope(const Window& w1, const Window& w2, double a, double b) {
  double s = 0.0;
  for (const auto& x : w1.atoms()) {
    for (const auto& y : w2.atoms()) {
      s += std::abs(x.coeff) * std::abs(y.coeff) *
           base_tf_envelope(x.base, y.base, a + y.shift - x.shift, b + y.freq - x.freq);
    }
  }
  return s;
}

namespace {

enum class Region { All, Inside, Outside };

bool in_region(long long k, Region r, long long radius) {
  switch (r) {
    case Region::All: return true;
    case Region::Inside: return std::llabs(k) <= radius;
    case Region::Outside: return std::llabs(k) > radius;
  }
  return false;
}

// Sum of f(k * step + off) over k in the region, for f even and
// non-increasing in |x|. Terms with |k| > cutoff are bounded by
// 2/step * integral_tail(cutoff * step - |off|).
double lattice_sum_1d(const std::function<double(double)>& f, const std::function<double(double)>& integral_tail,
                      double step, double off, Region region, long long radius, long long cutoff) {
  cutoff = std::max(cutoff, radius + 1);
  while (cutoff * step - std::abs(off) <= step) cutoff *= 2;
  double s = 0.0;
  for (long long k = -cutoff; k <= cutoff; ++k) {
    if (in_region(k, region, radius)) s += f(k * step + off);
  }
  if (region != Region::Inside) s += 2.0 / step * integral_tail(cutoff * step - std::abs(off));
  return s;
}

long long gauss_cutoff(double step, double off) {
  return static_cast<long long>(std::ceil((std::abs(off) + 40.0) / step)) + 1;
}

double gauss_gauss_tail(double sa, double oa, double sb, double ob, long long R) {
  auto f = [](double x) { return std::exp(-M_PI * x * x / 2.0); };
  auto tail = [](double X) { return M_SQRT1_2 * std::erfc(X * std::sqrt(M_PI / 2.0)); };
  auto sum = [&](double st, double o, Region r) { return lattice_sum_1d(f, tail, st, o, r, R, gauss_cutoff(st, o)); };
  return M_SQRT1_2 * (sum(sa, oa, Region::Outside) * sum(sb, ob, Region::All) +
                      sum(sa, oa, Region::Inside) * sum(sb, ob, Region::Outside));
}

// compact c against a Gaussian: envelope <= sqrt(time(a) * freq(b))
double compact_gauss_tail(const BaseWindow& c, double sa, double oa, double sb, double ob, long long R) {
  int n = decay_order(c);
  if (n <= 2) return kInfinity;
  auto [lo, hi] = c.support();
  auto time_sum = [&](Region r) {
    long long k0 = static_cast<long long>(std::floor((lo - 40.0 - oa) / sa)) - 1;
    long long k1 = static_cast<long long>(std::ceil((hi + 40.0 - oa) / sa)) + 1;
    double s = 0.0;
    for (long long k = k0; k <= k1; ++k) {
      if (in_region(k, r, R)) s += std::sqrt(compact_gauss_time(c, k * sa + oa));
    }
    return s;
  };
  double half = n / 2.0;
  auto f = [&](double x) { return std::sqrt(compact_gauss_freq(c, x)); };
  auto tail = [&](double X) {
    return std::pow(2.0 / M_PI, half) * std::pow(X, 1.0 - half) / (half - 1.0) +
           M_SQRT2 * std::erfc(X * std::sqrt(M_PI / 8.0));
  };
  auto freq_sum = [&](Region r) { return lattice_sum_1d(f, tail, sb, ob, r, R, R + 4000); };
  return time_sum(Region::Outside) * freq_sum(Region::All) + time_sum(Region::Inside) * freq_sum(Region::Outside);
}

bool near_integer(double x) { return std::abs(x - std::round(x)) <= 1e-9 * std::max(1.0, std::abs(x)); }

double compact_compact_tail(const BaseWindow& g1, const BaseWindow& g2, double sa, double oa, double sb, double ob,
                            long long R) {
  auto [s0, s1] = g1.support();
  auto [t0, t1] = g2.support();
  long long k0 = static_cast<long long>(std::floor((s0 - t1 - oa) / sa)) - 1;
  long long k1 = static_cast<long long>(std::ceil((s1 - t0 - oa) / sa)) + 1;
  double total = 0.0;
  for (long long k = k0; k <= k1; ++k) {
    double a = k * sa + oa;
    if (!overlap(g1, g2, a)) continue;
    Region lr = std::llabs(k) > R ? Region::All : Region::Outside;
    if (g1.boxlike() && g2.boxlike()) {
      double ell = std::min(s1, t1 + a) - std::max(s0, t0 + a);
      bool structural = near_integer(ell * sb) && near_integer(ell * ob);
      if (!structural) return kInfinity;
      // only a vanishing frequency survives
      double l0 = -ob / sb;
      if (near_integer(l0) && in_region(std::llround(l0), lr, R)) total += ell;
    } else if (!g1.boxlike() && !g2.boxlike()) {
      int s = std::min(g1.order, g2.order);
      auto f = [s](double x) { return spline_spline_freq(s, x); };
      auto tail = [s](double X) { return 2.0 * std::pow(2.0 / M_PI, s) * std::pow(X, 1.0 - s) / (s - 1.0); };
      total += lattice_sum_1d(f, tail, sb, ob, lr, R, R + 4000);
    } else {
      return kInfinity;
    }
  }
  return total;
}

double base_tail(const BaseWindow& g1, const BaseWindow& g2, double sa, double oa, double sb, double ob,
                 long long R) {
  using K = BaseWindow::Kind;
  if (g1.kind == K::Gaussian && g2.kind == K::Gaussian) return gauss_gauss_tail(sa, oa, sb, ob, R);
  if (g1.kind == K::Gaussian) return compact_gauss_tail(g2, sa, -oa, sb, -ob, R);
  if (g2.kind == K::Gaussian) return compact_gauss_tail(g1, sa, oa, sb, ob, R);
  return compact_compact_tail(g1, g2, sa, oa, sb, ob, R);
}

}  // namespace

double tf_envelope_tail(const Window& w1, const Window& w2, double step_a, double step_b, long long radius) {
  if (!(step_a > 0.0) || !(step_b > 0.0)) throw InvalidArgument("lattice steps must be positive");
  double s = 0.0;
  for (const auto& x : w1.atoms()) {
    for (const auto& y : w2.atoms()) {
      double c = std::abs(x.coeff) * std::abs(y.coeff);
      if (c == 0.0) continue;
      s += c * base_tail(x.base, y.base, step_a, y.shift - x.shift, step_b, y.freq - x.freq, radius);
      if (std::isinf(s)) return kInfinity;
    }
  }
  return s;
}

double tf_certified_tail(const Window& w1, const Window& w2, double step_a, double step_b, long long radius,
                         double target) {
  double best = tf_envelope_tail(w1, w2, step_a, step_b, radius);
  if (best <= 1e-3 * target) return best;
  constexpr long long kExtra = 16;
  if (!std::isfinite(tf_envelope_tail(w1, w2, step_a, step_b, radius + kExtra))) return best;
  const double quad_tol = 1e-15;
  const double rounding = 1e-15 * w1.coeff_l1() * w2.coeff_l1() + quad_tol;
  // stop once the ring evaluations exceed a fixed budget of atom pairs
  const double pairs = static_cast<double>(w1.atoms().size()) * static_cast<double>(w2.atoms().size());
  double spent = 0.0;
  CompensatedSum<double> ring;
  for (long long R = radius + 1; R <= radius + kExtra; ++R) {
    spent += pairs * 8.0 * static_cast<double>(R);
    if (spent > 4e6) break;
    for (long long k = -R; k <= R; ++k) {
      for (long long l = -R; l <= R; ++l) {
        if (std::max(std::abs(k), std::abs(l)) != R) continue;
        Complex v;
        try {
          v = tf_inner_product_real(w1, w2, k * step_a, l * step_b, quad_tol);
        } catch (const AccuracyError&) {
          return best;
        }
        ring.add(std::abs(v) + rounding);
      }
    }
    double env = tf_envelope_tail(w1, w2, step_a, step_b, R);
    best = std::min(best, ring.value() + env);
    if (env <= 1e-3 * target) break;
  }
  return best;
}

}  // namespace adelic
