#pragma once

#include "adelic/window.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace adelic {

/// The lattice alpha Z x beta Z of time-frequency shifts E_{m beta} T_{n alpha}.
/// Its adjoint lattice is (1/beta) Z x (1/alpha) Z.
struct RectLattice {
  double alpha = 1.0;
  double beta = 1.0;

  RectLattice() = default;
  RectLattice(double a, double b);
  double density() const { return alpha * beta; }
};

/// Finite complex coefficients on index pairs (k, l), standing for the point
/// (k * step_a, l * step_b), plus an l1 bound on everything omitted.
struct CoefficientSequence {
  double step_a = 1.0;
  double step_b = 1.0;
  std::map<std::pair<long long, long long>, Complex> coeffs;
  double tail_bound = 0.0;

  Complex at(long long k, long long l) const;
  double l1_norm() const;
};

/// c(k, l) = <h, E_{l/alpha} T_{k/beta} g> for max(|k|, |l|) <= radius.
CoefficientSequence janssen_coefficients(const Window& g, const Window& h, const RectLattice& lat, long long radius,
                                         double tol);

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool zak_zero = false;  // sampled lower bound vanished
  long long p = 1;        // alpha * beta = p / q
  long long q = 1;
  int grid_density = 0;
};

/// Density alpha * beta as a fraction with denominator <= 128, if it is one.
std::optional<std::pair<long long, long long>> rational_density(const RectLattice& lat);

/// Extremal eigenvalues of the Zibulski-Zeevi matrices on a
/// grid_density x grid_density grid. Throws Unsupported for irrational density.
FrameBounds frame_bounds_rational(const Window& g, const RectLattice& lat, int grid_density);

enum class DualMethod { Neumann, Grid, Auto };

struct DualOptions {
  DualMethod method = DualMethod::Auto;
  double tol = 1e-10;
  int grid_density = 16;
  long long max_radius = 24;
  long long max_iterations = 20000;
};

/// Frame bounds used to validate a window before inverting its frame
/// operator. Irrational densities fall back to the nearest density p/q with
/// q <= 128 at the same alpha. Throws NotAFrame.
FrameBounds require_frame(const Window& g, const RectLattice& lat, int grid_density);

/// S^{-1} g as a finite combination of adjoint-lattice shifts of g.
Window canonical_dual(const Window& g, const RectLattice& lat, DualMethod method, double tol);
Window canonical_dual(const Window& g, const RectLattice& lat, const DualOptions& opts);

/// S^{-1/2} g as a finite combination of adjoint-lattice shifts of g.
Window tight_window(const Window& g, const RectLattice& lat, double tol);
Window tight_window(const Window& g, const RectLattice& lat, const DualOptions& opts);

/// Uniform grid t_i = i * delta, |i| <= half_points, where 1/beta is an
/// integer multiple of delta.
struct ReferenceGrid {
  double delta = 0.0;
  long long half_points = 0;
  long long per_period = 1;  // (1/beta) / delta

  std::size_t size() const { return static_cast<std::size_t>(2 * half_points + 1); }
  double point(std::size_t i) const { return (static_cast<long long>(i) - half_points) * delta; }
};

ReferenceGrid reference_grid(const Window& g, const RectLattice& lat, double tol);

/// Samples of the frame operator of g applied to f on the grid (Walnut's
/// representation; exact up to the grid boundary).
std::vector<Complex> frame_operator_samples(const Window& g, const RectLattice& lat, const Window& f,
                                            const ReferenceGrid& grid);

/// L2 norm on the grid of a sampled function (Riemann sum).
double grid_l2(const std::vector<Complex>& v, const ReferenceGrid& grid);

}  // namespace adelic
