#include "adelic/gabor_real.hpp"

#include "adelic/errors.hpp"
#include "adelic/rational.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace adelic {

RectLattice::RectLattice(double a, double b) : alpha(a), beta(b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgument("lattice parameters must be positive and finite");
  }
}

Complex CoefficientSequence::at(long long k, long long l) const {
  auto it = coeffs.find({k, l});
  return it == coeffs.end() ? Complex(0.0) : it->second;
}

double CoefficientSequence::l1_norm() const {
  CompensatedSum<double> s;
  for (const auto& [idx, c] : coeffs) s.add(std::abs(c));
  return s.value();
}

CoefficientSequence janssen_coefficients(const Window& g, const Window& h, const RectLattice& lat, long long radius,
                                         double tol) {
  if (radius < 0) throw InvalidArgument("radius must be non-negative");
  CoefficientSequence out;
  out.step_a = 1.0 / lat.beta;
  out.step_b = 1.0 / lat.alpha;
  for (auto [k, l] : square_indices(radius)) {
    out.coeffs[{k, l}] = tf_inner_product_real(h, g, k * out.step_a, l * out.step_b, tol);
  }
  out.tail_bound = tf_envelope_tail(h, g, out.step_a, out.step_b, radius);
  return out;
}

std::optional<std::pair<long long, long long>> rational_density(const RectLattice& lat) {
  auto r = Rational::promote(lat.density(), 1e-12, 128);
  if (!r) return std::nullopt;
  return std::pair{static_cast<long long>(r->num()), static_cast<long long>(r->den())};
}

// ---------------------------------------------------------------------------
// frame bounds

FrameBounds frame_bounds_rational(const Window& g, const RectLattice& lat, int grid_density) {
  if (grid_density < 1) throw InvalidArgument("grid density must be positive");
  auto pq = rational_density(lat);
  if (!pq) throw Unsupported("frame bounds need a rational density alpha*beta with small denominator");
  const long long P = pq->first, Q = pq->second;
  const double u = lat.alpha / static_cast<double>(P);
  auto [lo, hi] = g.essential_support(1e-20);

  FrameBounds fb;
  fb.p = P;
  fb.q = Q;
  fb.grid_density = grid_density;
  fb.lower = kInfinity;
  fb.upper = 0.0;
  if (g.is_zero()) {
    fb.lower = 0.0;
    fb.zak_zero = true;
    return fb;
  }
  const long long PQ = P * Q;
  for (int ix = 0; ix < grid_density; ++ix) {
    double x = u * ix / grid_density;
    // window values g(x - J u) over the relevant J
    long long j_min = static_cast<long long>(std::floor((x - hi) / u)) - 1;
    long long j_max = static_cast<long long>(std::ceil((x - lo) / u)) + 1;
    long long d_min = static_cast<long long>(std::floor(static_cast<double>(j_min - 2 * PQ) / PQ)) - 1;
    long long d_max = static_cast<long long>(std::ceil(static_cast<double>(j_max) / PQ)) + 1;
    long long nd = d_max - d_min + 1;
    // C[d](k0, n0) = g(x - (k0 Q + n0 P + d P Q) u)
    std::vector<Eigen::MatrixXcd> C(static_cast<std::size_t>(nd), Eigen::MatrixXcd::Zero(P, Q));
    std::vector<bool> used(static_cast<std::size_t>(nd), false);
    for (long long d = d_min; d <= d_max; ++d) {
      auto& Cd = C[static_cast<std::size_t>(d - d_min)];
      for (long long k0 = 0; k0 < P; ++k0) {
        for (long long n0 = 0; n0 < Q; ++n0) {
          long long J = k0 * Q + n0 * P + d * PQ;
          if (J < j_min || J > j_max) continue;
          Complex v = g(x - static_cast<double>(J) * u);
          if (v != Complex(0.0)) {
            Cd(k0, n0) = v;
            used[static_cast<std::size_t>(d - d_min)] = true;
          }
        }
      }
    }
    for (int it = 0; it < grid_density; ++it) {
      double theta = static_cast<double>(it) / grid_density;
      Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(P, Q);
      for (long long d = d_min; d <= d_max; ++d) {
        if (!used[static_cast<std::size_t>(d - d_min)]) continue;
        M += C[static_cast<std::size_t>(d - d_min)] * expi_turns(d * theta);
      }
      Eigen::MatrixXcd H = M * M.adjoint();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
      const auto& ev = es.eigenvalues();
      fb.lower = std::min(fb.lower, std::max(0.0, ev.minCoeff()));
      fb.upper = std::max(fb.upper, ev.maxCoeff());
    }
  }
  fb.lower /= lat.beta;
  fb.upper /= lat.beta;
  fb.zak_zero = fb.lower <= 1e-10 * fb.upper;
  return fb;
}

FrameBounds require_frame(const Window& g, const RectLattice& lat, int grid_density) {
  RectLattice probe = lat;
  if (!rational_density(lat)) {
    double d = lat.density(), best = d, err = kInfinity;
    for (long long q = 1; q <= 128; ++q) {
      double p = std::max(1.0, std::round(d * static_cast<double>(q)));
      double e = std::fabs(d - p / static_cast<double>(q));
      if (e < err) {
        err = e;
        best = p / static_cast<double>(q);
      }
    }
    probe = RectLattice(lat.alpha, best / lat.alpha);
  }
  FrameBounds fb = frame_bounds_rational(g, probe, grid_density);
  if (g.is_zero() || fb.lower <= 1e-8 * fb.upper) {
    throw NotAFrame("window does not generate a Gabor frame for this lattice", fb.lower, fb.upper);
  }
  return fb;
}

// ---------------------------------------------------------------------------
// coefficient algebra of adjoint-lattice shifts

namespace {

// Dense coefficients on the box max(|k|, |l|) <= M for operators
// sum c(k, l) pi(k/beta, l/alpha), multiplied with the twisted convolution
// pi(x1, w1) pi(x2, w2) = exp(-2 pi i x1 w2) pi(x1 + x2, w1 + w2).
class TwistedBox {
 public:
  TwistedBox(long long M, double theta) : M_(M), n_(2 * M + 1), v_(static_cast<std::size_t>(n_ * n_)) {
    phase_.resize(static_cast<std::size_t>(n_ * n_));
    auto exact = Rational::promote(theta, 1e-12, 1000);
    for (long long k = -M; k <= M; ++k) {
      for (long long l = -M; l <= M; ++l) {
        double turns;
        if (exact) {
          BigInt num = exact->num() * k * l;
          turns = static_cast<double>(mod(num, exact->den())) / static_cast<double>(exact->den());
        } else {
          double t = theta * static_cast<double>(k * l);
          turns = t - std::floor(t);
        }
        phase_[idx(k, l)] = expi_turns(-turns);
      }
    }
  }

  long long radius() const { return M_; }
  std::size_t idx(long long k, long long l) const { return static_cast<std::size_t>((k + M_) * n_ + (l + M_)); }
  Complex& operator()(long long k, long long l) { return v_[idx(k, l)]; }
  Complex operator()(long long k, long long l) const { return v_[idx(k, l)]; }

  TwistedBox zero() const {
    TwistedBox z = *this;
    std::fill(z.v_.begin(), z.v_.end(), Complex(0.0));
    return z;
  }
  TwistedBox delta() const {
    TwistedBox z = zero();
    z(0, 0) = 1.0;
    return z;
  }

  TwistedBox operator*(const TwistedBox& b) const {
    TwistedBox out = zero();
    for (long long k1 = -M_; k1 <= M_; ++k1) {
      for (long long l1 = -M_; l1 <= M_; ++l1) {
        Complex a = (*this)(k1, l1);
        if (a == Complex(0.0)) continue;
        for (long long k2 = std::max(-M_, -M_ - k1); k2 <= std::min(M_, M_ - k1); ++k2) {
          for (long long l2 = std::max(-M_, -M_ - l1); l2 <= std::min(M_, M_ - l1); ++l2) {
            Complex bv = b(k2, l2);
            if (bv == Complex(0.0)) continue;
            out(k1 + k2, l1 + l2) += a * bv * phase_[idx(k1, l2)];
          }
        }
      }
    }
    return out;
  }
  TwistedBox& operator+=(const TwistedBox& b) {
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += b.v_[i];
    return *this;
  }
  TwistedBox operator*(Complex c) const {
    TwistedBox out = *this;
    for (auto& x : out.v_) x *= c;
    return out;
  }
  double l1() const {
    CompensatedSum<double> s;
    for (auto x : v_) s.add(std::abs(x));
    return s.value();
  }
  double max_abs() const {
    double m = 0.0;
    for (auto x : v_) m = std::max(m, std::abs(x));
    return m;
  }

 private:
  long long M_;
  long long n_;
  std::vector<Complex> v_;
  std::vector<Complex> phase_;
};

long long algebra_radius(const Window& g, const RectLattice& lat, long long max_radius) {
  double sa = 1.0 / lat.beta, sb = 1.0 / lat.alpha;
  double origin = std::abs(tf_inner_product_real(g, g, 0.0, 0.0, 1e-14));
  long long m0 = 1;
  while (m0 < max_radius && !(tf_envelope_tail(g, g, sa, sb, m0) <= 1e-17 * origin)) ++m0;
  return std::min(max_radius, 2 * m0 + 6);
}

// S = theta * sum <g, pi(lambda) g> pi(lambda) over the adjoint lattice
TwistedBox frame_operator_coefficients(const Window& g, const RectLattice& lat, long long M, double tol) {
  double theta = 1.0 / lat.density();
  TwistedBox s(M, theta);
  double sa = 1.0 / lat.beta, sb = 1.0 / lat.alpha;
  for (auto [k, l] : square_indices(M)) {
    s(k, l) = theta * tf_inner_product_real(g, g, k * sa, l * sb, tol);
  }
  return s;
}

Window apply_to_window(const TwistedBox& d, const Window& g, const RectLattice& lat) {
  double sa = 1.0 / lat.beta, sb = 1.0 / lat.alpha;
  double cutoff = 1e-17 * d.max_abs();
  Window out;
  std::vector<WindowAtom> atoms;
  for (auto [k, l] : square_indices(d.radius())) {
    Complex c = d(k, l);
    if (std::abs(c) <= cutoff) continue;
    Window piece = g.shifted(k * sa, l * sb) * c;
    atoms.insert(atoms.end(), piece.atoms().begin(), piece.atoms().end());
  }
  // merge atoms that coincide (only when g itself has several atoms)
  if (g.atoms().size() == 1) return Window(std::move(atoms));
  for (const auto& a : atoms) out = out + Window(std::vector<WindowAtom>{a});
  return out;
}

double contraction(const FrameBounds& fb) { return (fb.upper - fb.lower) / (fb.upper + fb.lower); }

bool neumann_feasible(const Window& g, const RectLattice& lat, const FrameBounds& fb, const DualOptions& opts) {
  if (!std::isfinite(tf_envelope_tail(g, g, 1.0 / lat.beta, 1.0 / lat.alpha, opts.max_radius))) return false;
  double q = contraction(fb);
  double needed = std::log(opts.tol) / std::log(std::max(q, 1e-300));
  return needed <= 2000.0;
}

Window neumann_dual(const Window& g, const RectLattice& lat, const FrameBounds& fb, const DualOptions& opts) {
  long long M = algebra_radius(g, lat, opts.max_radius);
  TwistedBox s = frame_operator_coefficients(g, lat, M, opts.tol * 1e-3);
  double q = contraction(fb);
  double c = 2.0 / (fb.lower + fb.upper);
  if (q > 0.0 && std::log(opts.tol) / std::log(q) > static_cast<double>(opts.max_iterations)) {
    throw NonConvergence("Neumann iteration would exceed the iteration limit", q);
  }
  TwistedBox delta = s.delta();
  TwistedBox x = delta * Complex(c);
  double best = kInfinity;
  long long stalled = 0;
  for (long long it = 0; it < opts.max_iterations; ++it) {
    TwistedBox r = delta;
    r += (s * x) * Complex(-1.0);
    double update = c * r.l1();
    if (update < opts.tol) return apply_to_window(x, g, lat);
    if (update < best * 0.999) {
      best = update;
      stalled = 0;
    } else if (++stalled > 50) {
      throw NonConvergence("Neumann iteration stalled above tolerance (truncation floor)", q);
    }
    x += r * Complex(c);
  }
  throw NonConvergence("Neumann iteration did not converge", q);
}

Window neumann_tight(const Window& g, const RectLattice& lat, const FrameBounds& fb, const DualOptions& opts) {
  long long M = algebra_radius(g, lat, opts.max_radius);
  TwistedBox s = frame_operator_coefficients(g, lat, M, opts.tol * 1e-3);
  double q = contraction(fb);
  double c = 2.0 / (fb.lower + fb.upper);
  // S^{-1/2} = sqrt(c) (I - R)^{-1/2}, R = I - c S, binomial series
  TwistedBox R = s.delta();
  R += s * Complex(-c);
  TwistedBox term = s.delta();
  TwistedBox sum = term;
  double a = 1.0;
  for (long long n = 0; n < opts.max_iterations; ++n) {
    a *= (2.0 * n + 1.0) / (2.0 * n + 2.0);
    term = R * term;
    double size = a * term.l1();
    sum += term * Complex(a);
    if (size < opts.tol * (1.0 - q)) return apply_to_window(sum * Complex(std::sqrt(c)), g, lat);
  }
  throw NonConvergence("binomial series for S^{-1/2} did not converge", q);
}

// ---------------------------------------------------------------------------
// grid method

// G_k(t) = sum_n g(t - n alpha) conj(g(t - n alpha - k / beta))
Complex walnut_coefficient(const Window& g, const RectLattice& lat, std::pair<double, double> reach, double t,
                           long long k) {
  double shift = k / lat.beta;
  double n_lo = std::max((t - reach.second) / lat.alpha, (t - shift - reach.second) / lat.alpha);
  double n_hi = std::min((t - reach.first) / lat.alpha, (t - shift - reach.first) / lat.alpha);
  CompensatedSum<Complex> s;
  for (long long n = static_cast<long long>(std::floor(n_lo)); n <= static_cast<long long>(std::ceil(n_hi)); ++n) {
    double x = t - n * lat.alpha;
    Complex a = g(x);
    if (a == Complex(0.0)) continue;
    s.add(a * std::conj(g(x - shift)));
  }
  return s.value();
}

enum class GridSolve { Inverse, InverseSqrt };

std::vector<Complex> grid_solve(const Window& g, const RectLattice& lat, const ReferenceGrid& grid, GridSolve kind) {
  auto reach = g.essential_support(1e-20);
  const long long m = grid.per_period;
  const long long N = grid.half_points;
  std::vector<Complex> out(grid.size());
  double kmax_d = (reach.second - reach.first) * lat.beta + 1.0;
  long long kmax = static_cast<long long>(std::ceil(kmax_d));
  for (long long r = 0; r < m; ++r) {
    // indices i = -N .. N with (i + N) mod m == r
    std::vector<long long> idx;
    for (long long i = -N + r; i <= N; i += m) idx.push_back(i);
    auto n = static_cast<Eigen::Index>(idx.size());
    if (n == 0) continue;
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n, n);
    Eigen::VectorXcd rhs(n);
    for (Eigen::Index a = 0; a < n; ++a) {
      double t = static_cast<double>(idx[static_cast<std::size_t>(a)]) * grid.delta;
      rhs(a) = g(t);
      for (long long k = -kmax; k <= kmax; ++k) {
        Eigen::Index b = a - k;
        if (b < 0 || b >= n) continue;
        S(a, b) = walnut_coefficient(g, lat, reach, t, k) / lat.beta;
      }
    }
    Eigen::VectorXcd sol;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S);
    Eigen::VectorXd ev = es.eigenvalues();
    Eigen::VectorXd f(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      double lam = std::max(ev(i), 1e-300);
      f(i) = kind == GridSolve::Inverse ? 1.0 / lam : 1.0 / std::sqrt(lam);
    }
    sol = es.eigenvectors() * (f.asDiagonal() * (es.eigenvectors().adjoint() * rhs));
    for (Eigen::Index a = 0; a < n; ++a) out[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)] + N)] = sol(a);
  }
  return out;
}

Window fit_combo(const Window& g, const RectLattice& lat, const ReferenceGrid& grid, const std::vector<Complex>& target,
                 long long M) {
  double sa = 1.0 / lat.beta, sb = 1.0 / lat.alpha;
  auto indices = square_indices(M);
  auto rows = static_cast<Eigen::Index>(grid.size());
  auto cols = static_cast<Eigen::Index>(indices.size());
  Eigen::MatrixXcd A(rows, cols);
  Eigen::VectorXcd y(rows);
  for (Eigen::Index c = 0; c < cols; ++c) {
    auto [k, l] = indices[static_cast<std::size_t>(c)];
    Window col = g.shifted(k * sa, l * sb);
    for (Eigen::Index r = 0; r < rows; ++r) A(r, c) = col(grid.point(static_cast<std::size_t>(r)));
  }
  for (Eigen::Index r = 0; r < rows; ++r) y(r) = target[static_cast<std::size_t>(r)];
  Eigen::VectorXcd x = A.completeOrthogonalDecomposition().solve(y);
  TwistedBox d(M, 1.0 / lat.density());
  for (Eigen::Index c = 0; c < cols; ++c) {
    auto [k, l] = indices[static_cast<std::size_t>(c)];
    d(k, l) = x(c);
  }
  return apply_to_window(d, g, lat);
}

Window grid_window(const Window& g, const RectLattice& lat, const DualOptions& opts, GridSolve kind) {
  long long M = std::min<long long>(algebra_radius(g, lat, opts.max_radius), 8);
  ReferenceGrid grid = reference_grid(g, lat, opts.tol);
  auto cols = static_cast<long long>((2 * M + 1) * (2 * M + 1));
  while (static_cast<long long>(grid.size()) < 2 * cols) {
    grid.delta /= 2.0;
    grid.per_period *= 2;
    grid.half_points *= 2;
  }
  auto samples = grid_solve(g, lat, grid, kind);
  return fit_combo(g, lat, grid, samples, M);
}

DualMethod resolve(const Window& g, const RectLattice& lat, const FrameBounds& fb, const DualOptions& opts) {
  if (opts.method != DualMethod::Auto) return opts.method;
  return neumann_feasible(g, lat, fb, opts) ? DualMethod::Neumann : DualMethod::Grid;
}

}  // namespace

Window canonical_dual(const Window& g, const RectLattice& lat, const DualOptions& opts) {
  FrameBounds fb = require_frame(g, lat, opts.grid_density);
  if (fb.upper - fb.lower <= 1e-12 * fb.upper) return g * Complex(1.0 / fb.lower);
  if (resolve(g, lat, fb, opts) == DualMethod::Neumann) return neumann_dual(g, lat, fb, opts);
  return grid_window(g, lat, opts, GridSolve::Inverse);
}

Window canonical_dual(const Window& g, const RectLattice& lat, DualMethod method, double tol) {
  DualOptions opts;
  opts.method = method;
  opts.tol = tol;
  return canonical_dual(g, lat, opts);
}

Window tight_window(const Window& g, const RectLattice& lat, const DualOptions& opts) {
  FrameBounds fb = require_frame(g, lat, opts.grid_density);
  if (fb.upper - fb.lower <= 1e-12 * fb.upper) return g * Complex(1.0 / std::sqrt(fb.lower));
  if (resolve(g, lat, fb, opts) == DualMethod::Neumann) return neumann_tight(g, lat, fb, opts);
  return grid_window(g, lat, opts, GridSolve::InverseSqrt);
}

Window tight_window(const Window& g, const RectLattice& lat, double tol) {
  DualOptions opts;
  opts.tol = tol;
  return tight_window(g, lat, opts);
}

ReferenceGrid reference_grid(const Window& g, const RectLattice& lat, double tol) {
  double sb = 1.0 / lat.beta;
  ReferenceGrid grid;
  grid.per_period = static_cast<long long>(std::ceil(16.0 * sb / std::min(lat.alpha, sb)));
  grid.delta = sb / static_cast<double>(grid.per_period);
  auto [lo, hi] = g.essential_support(std::max(tol / 10.0, 1e-300));
  double L = std::max(std::abs(lo), std::abs(hi)) + 4.0 * std::max(lat.alpha, sb) + 2.0;
  grid.half_points = static_cast<long long>(std::ceil(L / grid.delta));
  return grid;
}

std::vector<Complex> frame_operator_samples(const Window& g, const RectLattice& lat, const Window& f,
                                            const ReferenceGrid& grid) {
  auto reach = g.essential_support(1e-20);
  auto freach = f.essential_support(1e-20);
  std::vector<Complex> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double t = grid.point(i);
    // f(t - k/beta) is negligible outside f's reach
    long long k_lo = static_cast<long long>(std::floor((t - freach.second) * lat.beta)) - 1;
    long long k_hi = static_cast<long long>(std::ceil((t - freach.first) * lat.beta)) + 1;
    long long span = static_cast<long long>(std::ceil((reach.second - reach.first) * lat.beta)) + 1;
    k_lo = std::max(k_lo, -span);
    k_hi = std::min(k_hi, span);
    CompensatedSum<Complex> s;
    for (long long k = k_lo; k <= k_hi; ++k) {
      Complex fv = f(t - k / lat.beta);
      if (fv == Complex(0.0)) continue;
      s.add(walnut_coefficient(g, lat, reach, t, k) * fv);
    }
    out[i] = s.value() / lat.beta;
  }
  return out;
}

double grid_l2(const std::vector<Complex>& v, const ReferenceGrid& grid) {
  CompensatedSum<double> s;
  for (auto x : v) s.add(std::norm(x));
  return std::sqrt(s.value() * grid.delta);
}

}  // namespace adelic
