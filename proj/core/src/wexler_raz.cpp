#include "adelic/wexler_raz.hpp"

#include "adelic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace adelic {

namespace {

using Index = std::pair<Rational, Rational>;

nlohmann::json complex_json(Complex c) { return {{"re", c.real()}, {"im", c.imag()}}; }

nlohmann::json trunc_json(const Truncation& t) {
  return {{"height", t.height}, {"denom_exp", t.denom_exp}, {"primes", t.primes}};
}

Rational height(const Index& x) { return std::max(x.first.abs(), x.second.abs()); }

void sort_indices(std::vector<Index>& v) {
  std::sort(v.begin(), v.end(), [](const Index& a, const Index& b) {
    auto ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// all a / d with d | prod p^D over the given primes and |a / d| <= N
std::vector<Rational> fractions(const std::vector<Prime>& primes, long long N, long long D) {
  std::vector<BigInt> dens{1};
  for (Prime p : primes) {
    std::vector<BigInt> next;
    for (const auto& d : dens) {
      BigInt pe = 1;
      for (long long e = 0; e <= D; ++e) {
        next.push_back(d * pe);
        pe *= p;
      }
    }
    dens = std::move(next);
  }
  BigInt den = 1;
  for (const auto& d : dens) den = std::max(den, d);
  std::vector<Rational> out;
  BigInt top = den * N;
  for (BigInt a = -top; a <= top; ++a) out.emplace_back(a, den);
  return out;
}

constexpr std::size_t kMaxRows = 250000;

}  // namespace

AdelicTFLattice::AdelicTFLattice(GroupSelector g, double a, double b)
    : group(g), alpha(RealNumber::promoted(a)), beta(RealNumber::promoted(b)) {
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidArgument("lattice parameters must be positive");
}

std::vector<std::pair<Rational, Rational>> enumerate_indices(const GroupSelector& group, const Truncation& trunc,
                                                             const std::vector<Prime>& active) {
  if (trunc.height < 0 || trunc.denom_exp < 0) throw InvalidArgument("truncation bounds must be non-negative");
  const long long N = trunc.height;
  std::vector<Index> out;
  std::vector<Rational> values;
  std::vector<Prime> full = active;
  if (group.kind == GroupSelector::Kind::Real) full.clear();
  values = fractions(full, N, full.empty() ? 0 : trunc.denom_exp);
  if (values.size() * values.size() > kMaxRows) {
    throw InvalidArgument("truncation enumerates too many lattice indices; lower the height or exponent bound");
  }
  for (const auto& q : values)
    for (const auto& r : values) out.emplace_back(q, r);

  // witness rows for exact vanishing off the integers
  std::vector<Prime> witness_primes;
  if (group.kind == GroupSelector::Kind::RealXQp) witness_primes = {group.p};
  if (group.kind == GroupSelector::Kind::Adele) witness_primes = trunc.primes;
  std::vector<Rational> w;
  for (Prime p : witness_primes) {
    BigInt pe = 1;
    for (long long e = 1; e <= std::max<long long>(trunc.denom_exp, 1); ++e) {
      pe *= p;
      w.emplace_back(BigInt(1), pe);
      w.emplace_back(BigInt(-1), pe);
    }
  }
  if (group.kind == GroupSelector::Kind::Adele) {
    for (std::size_t i = 0; i < witness_primes.size(); ++i)
      for (std::size_t j = i + 1; j < witness_primes.size(); ++j)
        w.emplace_back(BigInt(1), BigInt(witness_primes[i]) * witness_primes[j]);
  }
  for (const auto& x : w) {
    for (const auto& y : {Rational(0), Rational(1)}) {
      out.emplace_back(x, y);
      out.emplace_back(y, x);
    }
    out.emplace_back(x, x);
  }
  sort_indices(out);
  return out;
}

const WexlerRazRow* WexlerRazReport::find(const Rational& q, const Rational& r) const {
  for (const auto& row : rows)
    if (row.q == q && row.r == r) return &row;
  return nullptr;
}

nlohmann::json WexlerRazReport::to_json() const {
  nlohmann::json j;
  j["group"] = group.str();
  j["alpha"] = alpha;
  j["beta"] = beta;
  j["truncation"] = trunc_json(trunc);
  j["tol"] = tol;
  j["expected_normalization"] = "alpha*beta";
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"q", r.q.str()}, {"r", r.r.str()}, {"expected", complex_json(r.expected)},
                   {"computed", complex_json(r.computed)}, {"residual", r.residual}, {"exact_zero", r.exact_zero},
                   {"integer", r.integer}});
  }
  j["rows"] = arr;
  j["max_residual"] = max_residual;
  j["max_integer_residual"] = max_integer_residual;
  j["tail_bound"] = std::isfinite(tail_bound) ? nlohmann::json(tail_bound) : nlohmann::json("inf");
  j["verdict"] = dual ? "dual" : "not dual";
  return j;
}

WexlerRazReport wexler_raz_check(const SeparableWindow& g, const SeparableWindow& h, const AdelicTFLattice& lat,
                                 const Truncation& trunc, double tol) {
  g.check_group(lat.group);
  h.check_group(lat.group);
  std::set<Prime> active_set;
  for (Prime p : g.active_primes()) active_set.insert(p);
  for (Prime p : h.active_primes()) active_set.insert(p);
  std::vector<Prime> active(active_set.begin(), active_set.end());

  WexlerRazReport rep;
  rep.group = lat.group;
  rep.alpha = lat.alpha.value;
  rep.beta = lat.beta.value;
  rep.trunc = trunc;
  rep.tol = tol;
  TFScaling adj = lat.adjoint();
  for (const auto& [q, r] : enumerate_indices(lat.group, trunc, active)) {
    WexlerRazRow row;
    row.q = q;
    row.r = r;
    row.integer = q.is_integer() && r.is_integer();
    row.expected = (q.is_zero() && r.is_zero()) ? Complex(lat.covolume()) : Complex(0.0);
    auto ip = tf_inner_product_group(h, g, q, r, adj, lat.group, tol);
    row.computed = ip.value;
    row.exact_zero = ip.exact_zero;
    row.residual = std::abs(row.computed - row.expected);
    rep.max_residual = std::max(rep.max_residual, row.residual);
    if (row.integer) rep.max_integer_residual = std::max(rep.max_integer_residual, row.residual);
    rep.rows.push_back(std::move(row));
  }
  double local_bound = 1.0;
  for (Prime p : active) {
    double hp = inner_product_padic(h.local_part(p), h.local_part(p)).value().real();
    double gp = inner_product_padic(g.local_part(p), g.local_part(p)).value().real();
    local_bound *= std::sqrt(std::max(0.0, hp * gp));
  }
  rep.tail_bound =
      local_bound * tf_certified_tail(h.real, g.real, adj.time_scale.value, adj.freq_scale.value, trunc.height, tol);
  rep.dual = rep.max_residual + rep.tail_bound < tol;
  return rep;
}

// ---------------------------------------------------------------------------

nlohmann::json EquivalenceReport::to_json() const {
  nlohmann::json checks_json = nlohmann::json::array();
  for (const auto& c : checks) checks_json.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"real", real.to_json()},
          {"local", local.to_json()},
          {"adele", adele.to_json()},
          {"checks", checks_json},
          {"passed", passed}};
}

EquivalenceReport theorem_equivalence_suite(const Window& g, const Window& h, double alpha, double beta, Prime p,
                                            const Truncation& trunc, double tol) {
  SeparableWindow gs(g), hs(h);
  EquivalenceReport rep;
  rep.real = wexler_raz_check(gs, hs, AdelicTFLattice(GroupSelector::real(), alpha, beta), trunc, tol);
  rep.local = wexler_raz_check(gs, hs, AdelicTFLattice(GroupSelector::rxqp(p), alpha, beta), trunc, tol);
  rep.adele = wexler_raz_check(gs, hs, AdelicTFLattice(GroupSelector::adele(), alpha, beta), trunc, tol);

  for (const auto* r : {&rep.local, &rep.adele}) {
    long long count = 0, bad = 0;
    for (const auto& row : r->rows) {
      if (row.integer) continue;
      ++count;
      if (!row.exact_zero) ++bad;
    }
    rep.checks.push_back({"non-integer rows vanish exactly (" + r->group.str() + ")", bad == 0 && count > 0,
                          std::to_string(count) + " rows, " + std::to_string(bad) + " nonzero"});
  }
  for (const auto* r : {&rep.local, &rep.adele}) {
    double worst = 0.0;
    bool missing = false;
    for (const auto& row : rep.real.rows) {
      const auto* other = r->find(row.q, row.r);
      if (!other) {
        missing = true;
        continue;
      }
      worst = std::max(worst, std::abs(other->computed - row.computed));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max deviation %.3g", worst);
    rep.checks.push_back({"integer rows agree with the real line (" + r->group.str() + ")",
                          !missing && worst <= 1e-10, buf});
  }
  bool same = rep.real.dual == rep.local.dual && rep.local.dual == rep.adele.dual;
  rep.checks.push_back({"verdicts coincide", same, rep.real.dual ? "dual" : "not dual"});
  rep.passed = std::all_of(rep.checks.begin(), rep.checks.end(), [](const auto& c) { return c.passed; });
  return rep;
}

// ---------------------------------------------------------------------------

double mixed_norm(const std::vector<std::pair<std::pair<Rational, Rational>, double>>& table, double s, double t) {
  if (!(s >= 1.0) || !(t >= 1.0)) throw InvalidArgument("mixed-norm exponents must be at least 1");
  std::map<Rational, std::vector<double>> by_r;
  for (const auto& [idx, v] : table) by_r[idx.second].push_back(std::abs(v));
  auto lp = [](const std::vector<double>& xs, double e) {
    if (std::isinf(e)) return xs.empty() ? 0.0 : *std::max_element(xs.begin(), xs.end());
    CompensatedSum<double> acc;
    for (double x : xs) acc.add(std::pow(x, e));
    return std::pow(acc.value(), 1.0 / e);
  };
  std::vector<double> inner;
  for (const auto& [r, xs] : by_r) inner.push_back(lp(xs, s));
  return lp(inner, t);
}

double modulation_norm(const SeparableWindow& f, const SeparableWindow& g, const AdelicTFLattice& lat, double s,
                       double t, const Truncation& trunc, double tol) {
  std::set<Prime> active_set;
  for (Prime p : f.active_primes()) active_set.insert(p);
  for (Prime p : g.active_primes()) active_set.insert(p);
  std::vector<Prime> active(active_set.begin(), active_set.end());
  std::vector<std::pair<std::pair<Rational, Rational>, double>> table;
  for (const auto& idx : enumerate_indices(lat.group, trunc, active)) {
    auto ip = tf_inner_product_group(f, g, idx.first, idx.second, lat.primal(), lat.group, tol);
    table.emplace_back(idx, std::abs(ip.value));
  }
  return mixed_norm(table, s, t);
}

// ---------------------------------------------------------------------------

nlohmann::json BalianLowScan::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json lower = nlohmann::json::array();
    for (const auto& [grid, a] : r.lower) lower.push_back({{"grid_density", grid}, {"lower", a}});
    arr.push_back({{"density", r.density},
                   {"alpha", r.alpha},
                   {"beta", r.beta},
                   {"supported", r.supported},
                   {"note", r.note},
                   {"lower_bounds", lower},
                   {"upper", r.upper},
                   {"frame", r.frame},
                   {"dual_found", r.dual_found},
                   {"origin_residual", r.origin_residual},
                   {"max_residual", r.max_residual}});
  }
  return {{"group", group.str()}, {"rows", arr}, {"lower_bounds_strictly_decrease", monotone}};
}

BalianLowScan balian_low_scan(const Window& g, const std::vector<double>& densities, const GroupSelector& group,
                              const Truncation& trunc, int grid_density, double tol) {
  BalianLowScan scan;
  scan.group = group;
  for (double d : densities) {
    if (!(d > 0.0) || d > 1.0) throw InvalidArgument("scan densities must lie in (0, 1]");
    BalianLowRow row;
    row.density = d;
    row.alpha = row.beta = std::sqrt(d);
    RectLattice lat(row.alpha, row.beta);
    auto pq = rational_density(lat);
    if (!pq) {
      row.supported = false;
      row.note = "irrational density skipped";
      scan.rows.push_back(row);
      continue;
    }
    int refinements = pq->first * pq->second <= 256 ? 3 : 2;
    FrameBounds fb;
    for (int i = 0, G = grid_density; i < refinements; ++i, G *= 2) {
      fb = frame_bounds_rational(g, lat, G);
      row.lower.emplace_back(G, fb.lower);
    }
    row.upper = fb.upper;
    row.frame = fb.lower > 1e-8 * fb.upper;
    try {
      Window h = canonical_dual(g, lat, DualMethod::Auto, tol);
      row.dual_found = true;
      auto rep = wexler_raz_check(SeparableWindow(g), SeparableWindow(h),
                                  AdelicTFLattice(group, row.alpha, row.beta), trunc, tol);
      const auto* origin = rep.find(Rational(0), Rational(0));
      row.origin_residual = origin ? origin->residual : 0.0;
      row.max_residual = rep.max_residual;
    } catch (const NotAFrame&) {
      row.note = "not a frame";
    } catch (const NonConvergence& e) {
      row.note = std::string("dual computation did not converge: ") + e.what();
    }
    scan.rows.push_back(row);
  }
  double prev = kInfinity;
  scan.monotone = true;
  for (const auto& r : scan.rows) {
    if (!r.supported) continue;
    double a = r.lower.back().second;
    if (!(a < prev)) scan.monotone = false;
    prev = a;
  }
  return scan;
}

}  // namespace adelic
