#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

namespace adelic {

using Complex = std::complex<double>;

/// Neumaier-compensated accumulator for real or complex sums.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    add_part(sum_, comp_, x);
  }
  T value() const { return sum_ + comp_; }

 private:
  static void add_part(double& s, double& c, double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  static void add_part(Complex& s, Complex& c, Complex x) {
    double sr = s.real(), si = s.imag(), cr = c.real(), ci = c.imag();
    add_part(sr, cr, x.real());
    add_part(si, ci, x.imag());
    s = {sr, si};
    c = {cr, ci};
  }

  T sum_{};
  T comp_{};
};

/// All (k, l) with max(|k|, |l|) <= radius, ordered by max(|k|, |l|) and then
/// lexicographically. Every lattice sum in the library walks this order.
inline std::vector<std::pair<long long, long long>> square_indices(long long radius) {
  std::vector<std::pair<long long, long long>> out;
  out.reserve(static_cast<std::size_t>((2 * radius + 1) * (2 * radius + 1)));
  out.emplace_back(0, 0);
  for (long long h = 1; h <= radius; ++h) {
    for (long long k = -h; k <= h; ++k) {
      for (long long l = -h; l <= h; ++l) {
        if (std::max(std::abs(k), std::abs(l)) == h) out.emplace_back(k, l);
      }
    }
  }
  return out;
}

/// exp(2 pi i turns), reducing the argument mod 1 first.
inline Complex expi_turns(double turns) {
  double r = turns - std::floor(turns);
  return std::polar(1.0, 2.0 * M_PI * r);
}

}  // namespace adelic
