#include "adelic/errors.hpp"
#include "adelic/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace adelic;

namespace {

// "a/b" strings are accepted wherever a real parameter is expected.
double parse_real(const std::string& s) {
  if (s.find('/') != std::string::npos) return Rational::parse(s).to_double();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("not a number: '" + s + "'");
  }
  if (used != s.size()) throw InvalidArgument("not a number: '" + s + "'");
  return v;
}

double parse_exponent(const std::string& s) { return s == "inf" ? kInfinity : parse_real(s); }

struct Flags {
  std::string config_path, output = "json";
  std::string group, window, dual, probe, alpha, beta, tol, q, r, x, finite, y_scale, s, t, primes, densities;
  long long prime = 0, height = -1, denom_exp = -1, seed = -1;
  int grid_density = 0, random_triples = -1;
  bool timing = false;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

RunConfig build_config(const std::string& command, const Flags& f, const CLI::App& sub) {
  RunConfig c;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw InvalidArgument("cannot read config '" + f.config_path + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument(std::string("malformed config: ") + e.what());
    }
    c = RunConfig::from_json(j);
  }
  c.command = command;
  auto given = [&](const char* name) { return sub.count(name) > 0; };
  if (given("--group")) c.group = f.group;
  if (given("--prime")) c.prime = static_cast<Prime>(f.prime);
  if (given("--window")) c.window = f.window;
  if (given("--dual")) c.dual = f.dual;
  if (given("--probe")) c.probe = f.probe;
  if (given("--alpha")) c.alpha = parse_real(f.alpha);
  if (given("--beta")) c.beta = parse_real(f.beta);
  if (given("--tol")) c.tol = parse_real(f.tol);
  if (given("--trunc-height")) c.height = f.height;
  if (given("--trunc-denom-exp")) c.denom_exp = f.denom_exp;
  if (given("--primes")) {
    c.primes.clear();
    for (const auto& p : split(f.primes)) c.primes.push_back(static_cast<Prime>(parse_real(p)));
  }
  if (given("--grid-density")) c.grid_density = f.grid_density;
  if (given("--densities")) {
    c.densities.clear();
    for (const auto& d : split(f.densities)) c.densities.push_back(parse_real(d));
  }
  if (given("--s")) c.s = parse_exponent(f.s);
  if (given("--t")) c.t = parse_exponent(f.t);
  if (given("--q")) c.q = f.q;
  if (given("--r")) c.r = f.r;
  if (given("--x")) c.x = parse_real(f.x);
  if (given("--finite")) c.finite = f.finite;
  if (given("--y-scale")) c.y_scale = parse_real(f.y_scale);
  if (given("--random-triples")) c.random_triples = f.random_triples;
  if (given("--seed")) c.seed = static_cast<std::uint64_t>(f.seed);
  if (given("--timing")) c.timing = true;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gabor frames on R, R x Q_p and the adeles"};
  app.require_subcommand(1);
  Flags f;
  for (const auto& name : subcommands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", f.config_path, "JSON config file; explicit flags override it");
    sub->add_option("--output", f.output, "json, csv, or a file path (.csv selects csv)");
    sub->add_option("--group", f.group, "real | rxqp | adele");
    sub->add_option("--prime", f.prime, "prime for rxqp");
    sub->add_option("--window", f.window, "gaussian | box:W | bspline:N | @file.json");
    sub->add_option("--dual", f.dual, "auto | self | window file");
    sub->add_option("--probe", f.probe, "probe window");
    sub->add_option("--alpha", f.alpha, "time step (decimal or a/b)");
    sub->add_option("--beta", f.beta, "frequency step (decimal or a/b)");
    sub->add_option("--tol", f.tol);
    sub->add_option("--trunc-height", f.height, "lattice height bound N");
    sub->add_option("--trunc-denom-exp", f.denom_exp, "denominator exponent bound D");
    sub->add_option("--primes", f.primes, "comma separated prime set");
    sub->add_option("--grid-density", f.grid_density);
    sub->add_option("--densities", f.densities, "comma separated lattice densities");
    sub->add_option("--s", f.s, "mixed norm exponent (or inf)");
    sub->add_option("--t", f.t, "mixed norm exponent (or inf)");
    sub->add_option("--q", f.q, "rational index");
    sub->add_option("--r", f.r, "rational index");
    sub->add_option("--x", f.x, "real coordinate");
    sub->add_option("--finite", f.finite, "finite coordinates, e.g. 2:1/2,3:1/3");
    sub->add_option("--y-scale", f.y_scale, "real scale of the second pairing argument");
    sub->add_option("--random-triples", f.random_triples);
    sub->add_option("--seed", f.seed);
    sub->add_flag("--timing", f.timing, "include wall-clock timing in the report");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  try {
    RunConfig config = build_config(sub->get_name(), f, *sub);
    std::string format = f.output;
    std::string path;
    if (format != "json" && format != "csv") {
      path = format;
      format = path.size() > 4 && path.substr(path.size() - 4) == ".csv" ? "csv" : "json";
    }
    Report report = run(config);
    std::string bytes = emit(report, format);
    if (path.empty()) {
      std::cout << bytes;
    } else {
      std::ofstream out(path, std::ios::binary);
      out << bytes;
      if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return kExitUsage;
      }
      std::cerr << report.body.at("verdict").get<std::string>() << "\n";
    }
    return report.exit_code;
  } catch (const AccuracyError& e) {
    std::cerr << "accuracy error: " << e.what() << "\n";
    return kExitAccuracy;
  } catch (const NonConvergence& e) {
    std::cerr << "no convergence: " << e.what() << "\n";
    return kExitAccuracy;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
