#include "adelic/report.hpp"

#include "adelic/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace adelic {

namespace {

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json number_or_inf(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(fmt(x)); }

double exponent_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "inf") return kInfinity;
    throw InvalidArgument("exponent must be a number or \"inf\"");
  }
  return j.get<double>();
}

void dump(const nlohmann::json& j, std::string& out, int indent) {
  std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {  // keys are already sorted
        if (!first) out += ",\n";
        first = false;
        out += pad + nlohmann::json(k).dump() + ": ";
        dump(v, out, indent + 2);
      }
      out += "\n" + close + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        dump(v, out, indent + 2);
      }
      out += "\n" + close + "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      double x = j.get<double>();
      out += std::isfinite(x) ? fmt(x) : "\"" + fmt(x) + "\"";
      return;
    }
    default: out += j.dump(); return;
  }
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string b(bool x) { return x ? "true" : "false"; }

Window load_window(const std::string& spec) {
  std::string path;
  if (!spec.empty() && spec[0] == '@') path = spec.substr(1);
  else if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") path = spec;
  if (path.empty()) return Window::parse(spec);
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read window file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("malformed window file '" + path + "': " + e.what());
  }
  return Window::from_json(j);
}

Window dual_window(const RunConfig& c, const Window& g) {
  if (c.dual == "self") return g;
  if (c.dual == "auto") return canonical_dual(g, RectLattice(c.alpha, c.beta), DualMethod::Auto, std::min(1e-10, c.tol * 1e-2));
  return load_window(c.dual);
}

Rational parse_rational(const std::string& s, const char* what) {
  try {
    return Rational::parse(s);
  } catch (const InvalidArgument&) {
    throw;
  } catch (const std::exception&) {
    throw InvalidArgument(std::string("malformed ") + what + " '" + s + "'");
  }
}

std::map<Prime, Rational> parse_finite(const std::string& text) {
  std::map<Prime, Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto colon = item.find(':');
    if (colon == std::string::npos) throw InvalidArgument("finite coordinates are written p:a/b");
    Prime p;
    try {
      p = std::stoull(item.substr(0, colon));
    } catch (const std::exception&) {
      throw InvalidArgument("bad prime in '" + item + "'");
    }
    require_prime(p);
    out[p] = parse_rational(item.substr(colon + 1), "coordinate");
  }
  return out;
}

nlohmann::json conventions() {
  return {{"character", "omega_y(x) = exp(2 pi i x_inf y_inf) prod_p exp(-2 pi i {x_p y_p}_p)"},
          {"modulation", "(E_b f)(t) = exp(2 pi i b t) on R, exp(-2 pi i {r t}_p) on Q_p"},
          {"translation", "(T_a f)(t) = f(t - a)"},
          {"time_frequency_shift", "pi(x, w) = E_w T_x"},
          {"gaussian", "exp(-pi t^2)"},
          {"lattice", "(alpha q, (q)_p) x (beta r, (r)_p)"},
          {"adjoint_lattice", "(q / beta, (q)_p) x (r / alpha, (r)_p)"},
          {"wexler_raz_expected", "s(Lambda) = alpha * beta at the origin"},
          {"inner_product", "linear in the first argument"}};
}

std::vector<std::string> wr_row(const WexlerRazRow& r) {
  return {r.q.str(),           r.r.str(),           fmt(r.expected.real()), fmt(r.expected.imag()),
          fmt(r.computed.real()), fmt(r.computed.imag()), fmt(r.residual),        b(r.exact_zero),
          b(r.integer)};
}

const std::vector<std::string> kWrHeader = {"q",           "r",           "expected_re", "expected_im", "computed_re",
                                            "computed_im", "residual",    "exact_zero",  "integer"};

Window random_gaussian_combo(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_real_distribution<double> unit(-1.0, 1.0), pos(-0.25, 0.25);
  std::vector<WindowAtom> atoms;
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    double re = unit(rng), im = unit(rng), shift = pos(rng), freq = pos(rng);
    atoms.push_back(WindowAtom{{re, im}, shift, freq, BaseWindow::gaussian()});
  }
  return Window(std::move(atoms));
}

struct Outcome {
  nlohmann::json result;
  std::string verdict;
  int exit_code = kExitSuccess;
  CsvTable csv;
};

Outcome run_wr_check(const RunConfig& c) {
  Outcome o;
  Window g = load_window(c.window);
  Window h;
  try {
    h = dual_window(c, g);
  } catch (const NotAFrame& e) {
    o.result = {{"error", e.what()}, {"lower_bound", e.lower_bound()}, {"upper_bound", e.upper_bound()}};
    o.verdict = "not a frame";
    o.exit_code = kExitNegative;
    o.csv.header = kWrHeader;
    return o;
  }
  AdelicTFLattice lat(c.group_selector(), c.alpha, c.beta);
  auto rep = wexler_raz_check(SeparableWindow(g), SeparableWindow(h), lat, c.truncation(), c.tol);
  o.result = rep.to_json();
  o.verdict = rep.dual ? "dual" : "not dual";
  o.exit_code = rep.dual ? kExitSuccess : kExitNegative;
  o.csv.header = kWrHeader;
  for (const auto& r : rep.rows) o.csv.rows.push_back(wr_row(r));
  return o;
}

Outcome run_equivalence(const RunConfig& c) {
  Outcome o;
  Window g = load_window(c.window);
  Window h;
  try {
    h = dual_window(c, g);
  } catch (const NotAFrame& e) {
    o.result = {{"error", e.what()}};
    o.verdict = "not a frame";
    o.exit_code = kExitNegative;
    return o;
  }
  auto rep = theorem_equivalence_suite(g, h, c.alpha, c.beta, c.prime, c.truncation(), c.tol);
  o.result = rep.to_json();
  o.verdict = rep.passed ? "equivalent" : "not equivalent";
  o.exit_code = rep.passed ? kExitSuccess : kExitNegative;
  o.csv.header = kWrHeader;
  o.csv.header.insert(o.csv.header.begin(), "group");
  for (const auto* r : {&rep.real, &rep.local, &rep.adele}) {
    for (const auto& row : r->rows) {
      auto cells = wr_row(row);
      cells.insert(cells.begin(), r->group.str());
      o.csv.rows.push_back(std::move(cells));
    }
  }
  return o;
}

Outcome run_blt_scan(const RunConfig& c) {
  Outcome o;
  auto scan = balian_low_scan(load_window(c.window), c.densities, c.group_selector(), c.truncation(), c.grid_density,
                              c.tol);
  o.result = scan.to_json();
  o.verdict = scan.monotone ? "lower bounds decrease" : "lower bounds do not decrease";
  o.exit_code = scan.monotone ? kExitSuccess : kExitNegative;
  o.csv.header = {"density", "alpha",      "beta",            "supported",    "lower_finest", "upper",
                  "frame",   "dual_found", "origin_residual", "max_residual", "note"};
  for (const auto& r : scan.rows) {
    o.csv.rows.push_back({fmt(r.density), fmt(r.alpha), fmt(r.beta), b(r.supported),
                          r.lower.empty() ? "" : fmt(r.lower.back().second), fmt(r.upper), b(r.frame),
                          b(r.dual_found), fmt(r.origin_residual), fmt(r.max_residual), r.note});
  }
  return o;
}

Outcome run_mod_norm(const RunConfig& c) {
  Outcome o;
  SeparableWindow f(load_window(c.probe)), g(load_window(c.window));
  AdelicTFLattice lat(c.group_selector(), c.alpha, c.beta);
  double v = modulation_norm(f, g, lat, c.s, c.t, c.truncation(), std::min(c.tol, 1e-12));
  o.result = {{"norm", number_or_inf(v)}, {"s", number_or_inf(c.s)}, {"t", number_or_inf(c.t)}};
  o.verdict = "computed";
  o.csv.header = {"s", "t", "norm"};
  o.csv.rows.push_back({fmt(c.s), fmt(c.t), fmt(v)});
  return o;
}

nlohmann::json point_json(const AdelicPoint& p) {
  nlohmann::json fin = nlohmann::json::object();
  for (const auto& [prime, v] : p.finite) fin[std::to_string(prime)] = v.str();
  nlohmann::json j = {{"real", p.real.value}, {"finite", fin}, {"rest", p.rest.str()}};
  j["real_exact"] = p.real.exact ? nlohmann::json(p.real.exact->str()) : nlohmann::json(nullptr);
  return j;
}

Outcome run_reduce(const RunConfig& c) {
  Outcome o;
  AdelicPoint x;
  x.real = RealNumber::promoted(c.x);
  x.finite = parse_finite(c.finite);
  auto [bpt, q] = fundamental_domain_reduce(x, RealNumber::promoted(c.alpha), c.group_selector());
  o.result = {{"q", q.str()}, {"b", point_json(bpt)}, {"in_fundamental_domain", bpt.in_compact_part()}};
  o.verdict = "reduced";
  std::string fin;
  for (const auto& [p, v] : bpt.finite) fin += (fin.empty() ? "" : ";") + std::to_string(p) + ":" + v.str();
  o.csv.header = {"q", "b_real", "b_finite"};
  o.csv.rows.push_back({q.str(), fmt(bpt.real.value), fin});
  return o;
}

Outcome run_pair(const RunConfig& c) {
  Outcome o;
  auto group = c.group_selector();
  RealNumber a = RealNumber::promoted(c.alpha);
  RealNumber ys = c.y_scale ? RealNumber::promoted(*c.y_scale) : a.inverse();
  auto x = lattice_embed(group, a, parse_rational(c.q, "q"));
  auto y = lattice_embed(group, ys, parse_rational(c.r, "r"));
  Phase ph = character_pair(x, y, group);
  auto v = ph.value();
  o.result = {{"turns", ph.turns().str()}, {"radians", ph.radians()}, {"exact", ph.exact()},
              {"is_one", ph.is_one()},     {"re", v.real()},          {"im", v.imag()},
              {"x", point_json(x)},        {"y", point_json(y)}};
  o.verdict = ph.is_one() ? "trivial" : "nontrivial";
  o.csv.header = {"turns", "radians", "re", "im", "exact", "is_one"};
  o.csv.rows.push_back({ph.turns().str(), fmt(ph.radians()), fmt(v.real()), fmt(v.imag()), b(ph.exact()), b(ph.is_one())});
  return o;
}

Outcome run_module_check(const RunConfig& c) {
  Outcome o;
  auto group = c.group_selector();
  std::vector<std::array<SeparableWindow, 3>> triples;
  if (c.random_triples > 0) {
    std::mt19937_64 rng(c.seed);
    for (int i = 0; i < c.random_triples; ++i) {
      Window f = random_gaussian_combo(rng), g = random_gaussian_combo(rng), h = random_gaussian_combo(rng);
      triples.push_back({SeparableWindow(f), SeparableWindow(g), SeparableWindow(h)});
    }
  } else {
    Window g = load_window(c.window);
    Window h;
    try {
      h = dual_window(c, g);
    } catch (const NotAFrame& e) {
      o.result = {{"error", e.what()}};
      o.verdict = "not a frame";
      o.exit_code = kExitNegative;
      return o;
    }
    triples.push_back({SeparableWindow(load_window(c.probe)), SeparableWindow(g), SeparableWindow(h)});
  }
  nlohmann::json arr = nlohmann::json::array();
  bool all = true;
  double worst = 0.0;
  o.csv.header = {"triple", "residual", "tail_bound", "identity_residual", "reconstruction_residual", "consistent",
                  "passed"};
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto& [f, g, h] = triples[i];
    auto rep = module_axiom_check(f, g, h, group, c.alpha, c.beta, c.truncation(), c.tol);
    all = all && rep.passed;
    worst = std::max(worst, rep.residual);
    auto j = rep.to_json();
    j["f"] = f.real.to_json();
    j["g"] = g.real.to_json();
    j["h"] = h.real.to_json();
    arr.push_back(j);
    o.csv.rows.push_back({std::to_string(i), fmt(rep.residual), fmt(rep.tail_bound), fmt(rep.identity_residual),
                          fmt(rep.reconstruction_residual), b(rep.consistent), b(rep.passed)});
  }
  o.result = {{"triples", arr}, {"max_residual", worst}, {"passed", all}};
  o.verdict = all ? "module identity holds" : "module identity fails";
  o.exit_code = all ? kExitSuccess : kExitNegative;
  return o;
}

Outcome run_projection_check(const RunConfig& c) {
  Outcome o;
  auto rep = projection_check(load_window(c.window), c.alpha, c.beta, c.group_selector(), c.truncation(), c.tol);
  o.result = rep.to_json();
  o.verdict = rep.verdict;
  o.exit_code = rep.verdict == "projection" ? kExitSuccess : kExitNegative;
  o.csv.header = {"q", "r", "re", "im"};
  for (const auto& [i, v] : rep.element.coefficients)
    o.csv.rows.push_back({i.first.str(), i.second.str(), fmt(v.real()), fmt(v.imag())});
  return o;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"wr-check", "equivalence",  "blt-scan",        "mod-norm",
                                                 "reduce",   "pair",         "module-check",    "projection-check"};
  return names;
}

Truncation RunConfig::truncation() const {
  Truncation t;
  t.height = height;
  t.denom_exp = denom_exp;
  t.primes = primes;
  return t;
}

GroupSelector RunConfig::group_selector() const { return GroupSelector::parse(group, prime); }

void RunConfig::validate() const {
  const auto& names = subcommands();
  if (std::find(names.begin(), names.end(), command) == names.end())
    throw InvalidArgument("unknown subcommand '" + command + "'");
  group_selector();
  require_prime(prime);
  for (Prime p : primes) require_prime(p);
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be positive");
  };
  positive(alpha, "alpha");
  positive(beta, "beta");
  positive(tol, "tol");
  if (y_scale) positive(*y_scale, "y-scale");
  if (!std::isfinite(x)) throw InvalidArgument("x must be finite");
  if (height < 0 || denom_exp < 0) throw InvalidArgument("truncation bounds must be non-negative");
  if (grid_density < 1) throw InvalidArgument("grid density must be positive");
  if (!(s >= 1.0) || !(t >= 1.0)) throw InvalidArgument("mixed-norm exponents must be at least 1");
  for (double d : densities)
    if (!(d > 0.0) || d > 1.0) throw InvalidArgument("densities must lie in (0, 1]");
  if (random_triples < 0) throw InvalidArgument("random-triples must be non-negative");
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j = {{"command", command},
                      {"group", group},
                      {"prime", prime},
                      {"window", window},
                      {"dual", dual},
                      {"probe", probe},
                      {"alpha", alpha},
                      {"beta", beta},
                      {"height", height},
                      {"denom_exp", denom_exp},
                      {"primes", primes},
                      {"tol", tol},
                      {"grid_density", grid_density},
                      {"densities", densities},
                      {"s", number_or_inf(s)},
                      {"t", number_or_inf(t)},
                      {"q", q},
                      {"r", r},
                      {"x", x},
                      {"finite", finite},
                      {"random_triples", random_triples},
                      {"seed", seed},
                      {"timing", timing}};
  j["y_scale"] = y_scale ? nlohmann::json(*y_scale) : nlohmann::json(nullptr);
  return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  static const std::set<std::string> known = {
      "command", "group", "prime", "window", "dual", "probe", "alpha", "beta", "height", "denom_exp", "primes", "tol",
      "grid_density", "densities", "s", "t", "q", "r", "x", "finite", "random_triples", "seed", "timing", "y_scale"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw InvalidArgument("unknown config key '" + k + "'");
  RunConfig c;
  try {
    c.command = j.value("command", c.command);
    c.group = j.value("group", c.group);
    c.prime = j.value("prime", c.prime);
    c.window = j.value("window", c.window);
    c.dual = j.value("dual", c.dual);
    c.probe = j.value("probe", c.probe);
    c.alpha = j.value("alpha", c.alpha);
    c.beta = j.value("beta", c.beta);
    c.height = j.value("height", c.height);
    c.denom_exp = j.value("denom_exp", c.denom_exp);
    c.primes = j.value("primes", c.primes);
    c.tol = j.value("tol", c.tol);
    c.grid_density = j.value("grid_density", c.grid_density);
    c.densities = j.value("densities", c.densities);
    if (j.contains("s")) c.s = exponent_from_json(j.at("s"));
    if (j.contains("t")) c.t = exponent_from_json(j.at("t"));
    c.q = j.value("q", c.q);
    c.r = j.value("r", c.r);
    c.x = j.value("x", c.x);
    c.finite = j.value("finite", c.finite);
    c.random_triples = j.value("random_triples", c.random_triples);
    c.seed = j.value("seed", c.seed);
    c.timing = j.value("timing", c.timing);
    if (j.contains("y_scale") && !j.at("y_scale").is_null()) c.y_scale = j.at("y_scale").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bad config value: ") + e.what());
  }
  return c;
}

Report run(const RunConfig& config) {
  config.validate();
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  const auto& cmd = config.command;
  if (cmd == "wr-check") o = run_wr_check(config);
  else if (cmd == "equivalence") o = run_equivalence(config);
  else if (cmd == "blt-scan") o = run_blt_scan(config);
  else if (cmd == "mod-norm") o = run_mod_norm(config);
  else if (cmd == "reduce") o = run_reduce(config);
  else if (cmd == "pair") o = run_pair(config);
  else if (cmd == "module-check") o = run_module_check(config);
  else o = run_projection_check(config);

  Report rep;
  auto cfg = config.to_json();
  auto a = RealNumber::promoted(config.alpha), bb = RealNumber::promoted(config.beta);
  nlohmann::json exactness = {{"alpha", a.exact ? nlohmann::json(a.exact->str()) : nlohmann::json(nullptr)},
                              {"beta", bb.exact ? nlohmann::json(bb.exact->str()) : nlohmann::json(nullptr)}};
  rep.body = {{"schema", kSchema},         {"command", cmd},       {"config", cfg},
              {"exact_parameters", exactness}, {"conventions", conventions()}, {"result", o.result},
              {"verdict", o.verdict},      {"exit_code", o.exit_code}};
  if (config.timing) {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.body["timing"] = {{"seconds", secs}};
  }
  rep.csv = std::move(o.csv);
  rep.exit_code = o.exit_code;
  return rep;
}

std::string canonical_json(const nlohmann::json& j) {
  std::string out;
  dump(j, out, 0);
  out += "\n";
  return out;
}

std::string emit(const Report& report, const std::string& format) {
  if (format == "json") return canonical_json(report.body);
  if (format != "csv") throw InvalidArgument("unknown output format '" + format + "'");
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_cell(cells[i]);
    out += "\n";
  };
  line(report.csv.header);
  for (const auto& r : report.csv.rows) line(r);
  return out;
}

}  // namespace adelic
