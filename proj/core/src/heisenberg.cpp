#include "adelic/heisenberg.hpp"

#include "adelic/errors.hpp"
#include "adelic/gabor_real.hpp"

#include <cmath>
#include <set>

namespace adelic {

namespace {

nlohmann::json index_json(const LatticeIndex& i) { return {i.first.str(), i.second.str()}; }

nlohmann::json trunc_json(const Truncation& t) {
  return {{"height", t.height}, {"denom_exp", t.denom_exp}, {"primes", t.primes}};
}

nlohmann::json finite_or_inf(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json("inf"); }

const char* side_name(ModuleSide s) { return s == ModuleSide::LeftA ? "A" : "B"; }

bool same_local_parts(const SeparableWindow& a, const SeparableWindow& b) {
  std::set<Prime> primes;
  for (const auto& [p, f] : a.local) primes.insert(p);
  for (const auto& [p, f] : b.local) primes.insert(p);
  for (Prime p : primes)
    if (!equals(a.local_part(p), b.local_part(p))) return false;
  return true;
}

std::vector<Prime> union_active(const SeparableWindow& f, const SeparableWindow& g) {
  std::set<Prime> s;
  for (Prime p : f.active_primes()) s.insert(p);
  for (Prime p : g.active_primes()) s.insert(p);
  return {s.begin(), s.end()};
}

double local_norm_product(const SeparableWindow& f, const SeparableWindow& g) {
  double out = 1.0;
  for (Prime p : union_active(f, g)) {
    double a = inner_product_padic(f.local_part(p), f.local_part(p)).value().real();
    double b = inner_product_padic(g.local_part(p), g.local_part(p)).value().real();
    out *= std::sqrt(std::max(0.0, a * b));
  }
  return out;
}

// omega(x) for x = (q / beta, (q)_p), omega = (r / alpha, (r)_p)
Phase adjoint_pairing(const LatticeIndex& i, const ModuleAlgebraTag& tag) {
  auto x = lattice_embed(tag.group, tag.beta.inverse(), i.first);
  auto w = lattice_embed(tag.group, tag.alpha.inverse(), i.second);
  return character_pair(x, w, tag.group);
}

}  // namespace

ModuleAlgebraTag::ModuleAlgebraTag(ModuleSide s, GroupSelector g, double a, double b)
    : side(s), group(g), alpha(RealNumber::promoted(a)), beta(RealNumber::promoted(b)) {
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidArgument("lattice parameters must be positive");
}

bool operator==(const ModuleAlgebraTag& x, const ModuleAlgebraTag& y) {
  return x.side == y.side && x.group == y.group && x.alpha.value == y.alpha.value && x.beta.value == y.beta.value;
}

// ---------------------------------------------------------------------------

ModuleElement ModuleElement::delta(const ModuleAlgebraTag& tag, const LatticeIndex& at, Complex c) {
  ModuleElement e;
  e.tag = tag;
  e.coefficients[at] = c;
  return e;
}

Complex ModuleElement::at(const LatticeIndex& i) const {
  auto it = coefficients.find(i);
  return it == coefficients.end() ? Complex(0.0) : it->second;
}

double ModuleElement::l1_norm() const {
  CompensatedSum<double> s;
  for (const auto& [i, c] : coefficients) s.add(std::abs(c));
  return s.value();
}

ModuleElement ModuleElement::operator+(const ModuleElement& o) const {
  if (!(tag == o.tag)) throw InvalidArgument("module elements over different algebras");
  ModuleElement out = *this;
  for (const auto& [i, c] : o.coefficients) out.coefficients[i] += c;
  out.tail_bound = tail_bound + o.tail_bound;
  return out;
}

ModuleElement ModuleElement::operator-(const ModuleElement& o) const { return *this + o * Complex(-1.0); }

ModuleElement ModuleElement::operator*(Complex c) const {
  ModuleElement out = *this;
  for (auto& [i, v] : out.coefficients) v *= c;
  out.tail_bound = tail_bound * std::abs(c);
  return out;
}

nlohmann::json ModuleElement::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [i, c] : coefficients)
    arr.push_back({{"q", i.first.str()}, {"r", i.second.str()}, {"re", c.real()}, {"im", c.imag()}});
  return {{"algebra", side_name(tag.side)},
          {"group", tag.group.str()},
          {"alpha", tag.alpha.value},
          {"beta", tag.beta.value},
          {"coefficients", arr},
          {"l1_norm", l1_norm()},
          {"tail_bound", finite_or_inf(tail_bound)}};
}

// ---------------------------------------------------------------------------

Phase cocycle(const LatticeIndex& l1, const LatticeIndex& l2, const ModuleAlgebraTag& tag) {
  if (tag.side == ModuleSide::LeftA) {
    // E_w1 T_x1 E_w2 T_x2 = conj(w2(x1)) E_{w1+w2} T_{x1+x2}
    auto x1 = lattice_embed(tag.group, tag.alpha, l1.first);
    auto w2 = lattice_embed(tag.group, tag.beta, l2.second);
    return character_pair(x1, w2, tag.group).conj();
  }
  // U(l) = V(l)^* with V(l) = E_w T_x on the adjoint lattice; U(l1) U(l2) = (V(l2) V(l1))^*
  auto x2 = lattice_embed(tag.group, tag.beta.inverse(), l2.first);
  auto w1 = lattice_embed(tag.group, tag.alpha.inverse(), l1.second);
  return character_pair(x2, w1, tag.group);
}

ModuleElement twisted_convolve(const ModuleElement& a, const ModuleElement& b) {
  if (!(a.tag == b.tag)) throw InvalidArgument("twisted convolution of elements over different algebras");
  ModuleElement out;
  out.tag = a.tag;
  // the cocycle depends on (q1, r2) only on the A side and on (q2, r1) on the B side
  std::map<std::pair<Rational, Rational>, Complex> cache;
  for (const auto& [mu, am] : a.coefficients) {
    for (const auto& [nu, bn] : b.coefficients) {
      auto key = a.tag.side == ModuleSide::LeftA ? std::make_pair(mu.first, nu.second)
                                                 : std::make_pair(nu.first, mu.second);
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, cocycle(mu, nu, a.tag).value()).first;
      out.coefficients[{mu.first + nu.first, mu.second + nu.second}] += am * bn * it->second;
    }
  }
  double na = a.l1_norm(), nb = b.l1_norm();
  out.tail_bound = na * b.tail_bound + a.tail_bound * nb + a.tail_bound * b.tail_bound;
  return out;
}

ModuleElement twisted_involution(const ModuleElement& a) {
  ModuleElement out;
  out.tag = a.tag;
  out.tail_bound = a.tail_bound;
  for (const auto& [lam, c] : a.coefficients) {
    LatticeIndex neg{-lam.first, -lam.second};
    // U(l)^* = conj(c(l, -l)) U(-l)
    out.coefficients[neg] += std::conj(c) * cocycle(lam, neg, a.tag).conj().value();
  }
  return out;
}

// ---------------------------------------------------------------------------

void SeparableSum::add(SeparableWindow w) {
  for (auto& t : terms) {
    if (same_local_parts(t, w)) {
      t.real = t.real + w.real;
      return;
    }
  }
  terms.push_back(std::move(w));
}

SeparableSum SeparableSum::operator+(const SeparableSum& o) const {
  SeparableSum out = *this;
  for (const auto& t : o.terms) out.add(t);
  return out;
}

SeparableSum SeparableSum::operator-(const SeparableSum& o) const { return *this + o * Complex(-1.0); }

SeparableSum SeparableSum::operator*(Complex c) const {
  SeparableSum out = *this;
  for (auto& t : out.terms) t.real = t.real * c;
  return out;
}

Complex SeparableSum::operator()(double t, const std::map<Prime, Rational>& finite) const {
  Complex total = 0.0;
  for (const auto& term : terms) {
    Complex v = term.real(t);
    std::set<Prime> primes;
    for (const auto& [p, f] : term.local) primes.insert(p);
    for (const auto& [p, x] : finite) primes.insert(p);
    for (Prime p : primes) {
      auto it = finite.find(p);
      v *= term.local_part(p)(it == finite.end() ? Rational(0) : it->second).value();
    }
    total += v;
  }
  return total;
}

std::size_t SeparableSum::atom_count() const {
  std::size_t n = 0;
  for (const auto& t : terms) n += t.real.atoms().size();
  return n;
}

Complex inner_product(const SeparableSum& f, const SeparableSum& g, double tol) {
  Complex total = 0.0;
  for (const auto& a : f.terms) {
    for (const auto& b : g.terms) {
      std::set<Prime> primes;
      for (const auto& [p, x] : a.local) primes.insert(p);
      for (const auto& [p, x] : b.local) primes.insert(p);
      Cyclotomic local(Rational(1));
      for (Prime p : primes) local = local * inner_product_padic(a.local_part(p), b.local_part(p));
      if (local.is_zero()) continue;
      total += local.value() * tf_inner_product_real(a.real, b.real, 0.0, 0.0, tol);
    }
  }
  return total;
}

double l2_norm(const SeparableSum& f, double tol) { return std::sqrt(std::max(0.0, inner_product(f, f, tol).real())); }

SeparableWindow tf_shift(const SeparableWindow& f, double x, const Rational& q, double w, const Rational& r) {
  SeparableWindow out(f.real.shifted(x, w));
  std::set<Prime> primes;
  for (const auto& [p, part] : f.local) primes.insert(p);
  for (Prime p : prime_divisors(q.den())) primes.insert(p);
  for (Prime p : prime_divisors(r.den())) primes.insert(p);
  for (Prime p : primes) out.local.emplace(p, f.local_part(p).shifted(q, r));
  return out;
}

// ---------------------------------------------------------------------------

ModuleElement module_inner(const SeparableWindow& f, const SeparableWindow& g, const ModuleAlgebraTag& tag,
                           const Truncation& trunc, double tol) {
  ModuleElement out;
  out.tag = tag;
  auto active = union_active(f, g);
  if (tag.side == ModuleSide::LeftA) {
    TFScaling primal{tag.alpha, tag.beta};
    for (const auto& [q, r] : enumerate_indices(tag.group, trunc, active)) {
      auto ip = tf_inner_product_group(f, g, q, r, primal, tag.group, tol);
      if (!ip.exact_zero && ip.value != Complex(0.0)) out.coefficients[{q, r}] = ip.value;
    }
    out.tail_bound = local_norm_product(f, g) *
                     tf_certified_tail(f.real, g.real, tag.alpha.value, tag.beta.value, trunc.height, tol);
    return out;
  }
  // <g, U(q, r) f> with U(q, r) = omega(x) E_{-w} T_{-x}, divided by alpha beta
  TFScaling adjoint{tag.beta.inverse(), tag.alpha.inverse()};
  double scale = 1.0 / (tag.alpha.value * tag.beta.value);
  for (const auto& [q, r] : enumerate_indices(tag.group, trunc, active)) {
    auto ip = tf_inner_product_group(g, f, -q, -r, adjoint, tag.group, tol);
    if (ip.exact_zero || ip.value == Complex(0.0)) continue;
    out.coefficients[{q, r}] = scale * adjoint_pairing({q, r}, tag).value() * ip.value;
  }
  out.tail_bound = scale * local_norm_product(f, g) *
                   tf_certified_tail(g.real, f.real, adjoint.time_scale.value, adjoint.freq_scale.value, trunc.height,
                                     tol);
  return out;
}

SeparableSum module_action(const ModuleElement& a, const SeparableSum& f) {
  SeparableSum out;
  const auto& tag = a.tag;
  for (const auto& [idx, c] : a.coefficients) {
    const auto& [q, r] = idx;
    for (const auto& term : f.terms) {
      SeparableWindow s;
      if (tag.side == ModuleSide::LeftA) {
        s = tf_shift(term, (tag.alpha * q).value, q, (tag.beta * r).value, r);
        s.real = s.real * c;
      } else {
        s = tf_shift(term, -(tag.beta.inverse() * q).value, -q, -(tag.alpha.inverse() * r).value, -r);
        s.real = s.real * (c * adjoint_pairing(idx, tag).conj().value());
      }
      out.add(std::move(s));
    }
  }
  return out;
}

SeparableSum module_action(const ModuleElement& a, const SeparableWindow& f) {
  return module_action(a, SeparableSum(f));
}

// ---------------------------------------------------------------------------

nlohmann::json ModuleAxiomReport::to_json() const {
  return {{"group", group.str()},
          {"alpha", alpha},
          {"beta", beta},
          {"truncation", trunc_json(trunc)},
          {"residual", residual},
          {"tail_bound", finite_or_inf(tail_bound)},
          {"identity_residual", identity_residual},
          {"reconstruction_residual", reconstruction_residual},
          {"wr_max_residual", wr_max_residual},
          {"dual_by_identity", dual_by_identity},
          {"dual_by_reconstruction", dual_by_reconstruction},
          {"dual_by_wexler_raz", dual_by_wexler_raz},
          {"consistent", consistent},
          {"passed", passed}};
}

ModuleAxiomReport module_axiom_check(const SeparableWindow& f, const SeparableWindow& g, const SeparableWindow& h,
                                     const GroupSelector& group, double alpha, double beta, const Truncation& trunc,
                                     double tol) {
  ModuleAxiomReport rep;
  rep.group = group;
  rep.alpha = alpha;
  rep.beta = beta;
  rep.trunc = trunc;
  ModuleAlgebraTag tag_a(ModuleSide::LeftA, group, alpha, beta);
  ModuleAlgebraTag tag_b(ModuleSide::RightB, group, alpha, beta);

  auto a = module_inner(f, g, tag_a, trunc, tol);
  auto b = module_inner(g, h, tag_b, trunc, tol);
  SeparableSum lhs = module_action(a, h);
  SeparableSum rhs = module_action(b, f);
  double nf = l2_norm(SeparableSum(f)), nh = l2_norm(SeparableSum(h));
  rep.residual = l2_norm(lhs - rhs);
  rep.tail_bound = a.tail_bound * nh + b.tail_bound * nf;

  auto id = b - ModuleElement::delta(tag_b);
  rep.identity_residual = id.l1_norm();
  rep.dual_by_identity = rep.identity_residual + b.tail_bound < tol;

  // reconstruction of f, or of a fixed probe when f vanishes
  SeparableWindow probe = nf > 0.0 ? f : SeparableWindow(Window::gaussian().shifted(0.3, -0.2));
  auto ap = nf > 0.0 ? a : module_inner(probe, g, tag_a, trunc, tol);
  double np = l2_norm(SeparableSum(probe));
  rep.reconstruction_residual = l2_norm(SeparableSum(probe) - module_action(ap, h)) / np;
  rep.dual_by_reconstruction = rep.reconstruction_residual + ap.tail_bound * nh / np < tol;

  auto wr = wexler_raz_check(g, h, AdelicTFLattice(group, alpha, beta), trunc, tol);
  rep.wr_max_residual = wr.max_residual;
  rep.dual_by_wexler_raz = wr.dual;

  rep.consistent = rep.dual_by_identity == rep.dual_by_reconstruction && rep.dual_by_identity == rep.dual_by_wexler_raz;
  rep.passed = rep.residual + rep.tail_bound < tol && rep.consistent;
  return rep;
}

// ---------------------------------------------------------------------------

nlohmann::json ProjectionReport::to_json() const {
  nlohmann::json j = {{"group", group.str()},
                      {"alpha", alpha},
                      {"beta", beta},
                      {"truncation", trunc_json(trunc)},
                      {"tol", tol},
                      {"frame", frame},
                      {"verdict", verdict},
                      {"idempotency_residual", idempotency},
                      {"self_adjointness_residual", self_adjointness},
                      {"tail_bound", finite_or_inf(tail_bound)}};
  if (frame) j["element"] = element.to_json();
  return j;
}

ProjectionReport projection_check(const Window& g, double alpha, double beta, const GroupSelector& group,
                                  const Truncation& trunc, double tol) {
  ProjectionReport rep;
  rep.group = group;
  rep.alpha = alpha;
  rep.beta = beta;
  rep.trunc = trunc;
  rep.tol = tol;
  Window gamma;
  try {
    gamma = tight_window(g, RectLattice(alpha, beta), std::min(tol, 1e-10));
  } catch (const NotAFrame&) {
    rep.verdict = "not a frame";
    return rep;
  }
  rep.frame = true;
  SeparableWindow sg(gamma);
  ModuleAlgebraTag tag(ModuleSide::LeftA, group, alpha, beta);
  rep.element = module_inner(sg, sg, tag, trunc, std::min(tol, 1e-12));
  const auto& a = rep.element;
  auto aa = twisted_convolve(a, a);
  rep.idempotency = (aa - a).l1_norm();
  rep.self_adjointness = (twisted_involution(a) - a).l1_norm();
  // dropped coefficients of a, and the products they enter
  double n = a.l1_norm(), t = a.tail_bound;
  rep.tail_bound = 2.0 * n * t + t * t + t;
  bool ok = rep.idempotency + rep.tail_bound < tol && rep.self_adjointness + 2.0 * t < tol;
  rep.verdict = ok ? "projection" : "not a projection";
  return rep;
}

}  // namespace adelic
