#pragma once

#include "adelic/adelic.hpp"
#include "adelic/padic_function.hpp"
#include "adelic/window.hpp"

#include <map>

namespace adelic {

/// g_R (x) prod_p g_p, with g_p = 1_{Z_p} at every prime not listed.
struct SeparableWindow {
  Window real;
  std::map<Prime, PAdicTestFunction> local;

  SeparableWindow() = default;
  explicit SeparableWindow(Window w) : real(std::move(w)) {}
  SeparableWindow(Window w, std::map<Prime, PAdicTestFunction> parts);

  PAdicTestFunction local_part(Prime p) const;
  /// Primes whose local part is not 1_{Z_p}.
  std::vector<Prime> active_primes() const;
  bool all_default() const { return active_primes().empty(); }
  /// Throws InvalidArgument when the window does not live on the group
  /// (RealXQp allows only its own prime; Real allows none).
  void check_group(const GroupSelector& group) const;
};

/// Scalings of a lattice of time-frequency shifts: the point with index
/// (q, r) is pi((time_scale q, (q)_p), (freq_scale r, (r)_p)).
struct TFScaling {
  RealNumber time_scale;
  RealNumber freq_scale;
};

struct GroupInnerProduct {
  Complex value;
  Complex real_factor;
  Cyclotomic padic_factor;  // product over evaluated primes, exact
  bool exact_zero = false;  // the p-adic factor vanishes identically
};

/// <f, E_{(b r, r)} T_{(a q, q)} g> on the group, factored into the real
/// inner product and exact p-adic inner products. Primes not dividing the
/// denominators of q, r and not active in f or g contribute exactly 1.
GroupInnerProduct tf_inner_product_group(const SeparableWindow& f, const SeparableWindow& g, const Rational& q,
                                         const Rational& r, const TFScaling& scaling, const GroupSelector& group,
                                         double tol);

}  // namespace adelic
