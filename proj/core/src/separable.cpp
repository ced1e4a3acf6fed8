#include "adelic/separable.hpp"

#include "adelic/errors.hpp"

#include <set>

namespace adelic {

SeparableWindow::SeparableWindow(Window w, std::map<Prime, PAdicTestFunction> parts) : real(std::move(w)) {
  for (auto& [p, f] : parts) {
    if (f.prime() != p) throw InvalidArgument("local part stored under the wrong prime");
    local.emplace(p, std::move(f));
  }
}

PAdicTestFunction SeparableWindow::local_part(Prime p) const {
  auto it = local.find(p);
  return it == local.end() ? PAdicTestFunction::unit(p) : it->second;
}

std::vector<Prime> SeparableWindow::active_primes() const {
  std::vector<Prime> out;
  for (const auto& [p, f] : local)
    if (!f.is_unit_indicator()) out.push_back(p);
  return out;
}

void SeparableWindow::check_group(const GroupSelector& group) const {
  auto active = active_primes();
  switch (group.kind) {
    case GroupSelector::Kind::Real:
      if (!active.empty()) throw InvalidArgument("real-line windows carry no p-adic parts");
      break;
    case GroupSelector::Kind::RealXQp:
      for (Prime p : active)
        if (p != group.p) throw InvalidArgument("window has a local part at a prime outside the group");
      break;
    case GroupSelector::Kind::Adele: break;
  }
}

GroupInnerProduct tf_inner_product_group(const SeparableWindow& f, const SeparableWindow& g, const Rational& q,
                                         const Rational& r, const TFScaling& scaling, const GroupSelector& group,
                                         double tol) {
  f.check_group(group);
  g.check_group(group);
  std::set<Prime> primes;
  switch (group.kind) {
    case GroupSelector::Kind::Real:
      if (!q.is_integer() || !r.is_integer()) throw InvalidArgument("real lattice indices are integers");
      break;
    case GroupSelector::Kind::RealXQp:
      for (const auto& x : {q, r}) {
        for (Prime p : prime_divisors(x.den()))
          if (p != group.p) throw InvalidArgument("index " + x.str() + " is not in Z[1/p]");
      }
      primes.insert(group.p);
      break;
    case GroupSelector::Kind::Adele:
      for (Prime p : prime_divisors(q.den())) primes.insert(p);
      for (Prime p : prime_divisors(r.den())) primes.insert(p);
      for (Prime p : f.active_primes()) primes.insert(p);
      for (Prime p : g.active_primes()) primes.insert(p);
      break;
  }

  GroupInnerProduct out;
  out.padic_factor = Cyclotomic(Rational(1));
  for (Prime p : primes) {
    PAdicTestFunction fp = f.local_part(p);
    PAdicTestFunction gp = g.local_part(p).shifted(q, r);
    out.padic_factor = out.padic_factor * inner_product_padic(fp, gp);
    if (out.padic_factor.is_zero()) break;
  }
  if (out.padic_factor.is_zero()) {
    out.exact_zero = true;
    out.real_factor = 0.0;
    out.value = 0.0;
    return out;
  }
  RealNumber a = scaling.time_scale * q;
  RealNumber b = scaling.freq_scale * r;
  out.real_factor = tf_inner_product_real(f.real, g.real, a.value, b.value, tol);
  out.value = out.real_factor * out.padic_factor.value();
  return out;
}

}  // namespace adelic
