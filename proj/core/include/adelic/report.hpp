#pragma once

#include "adelic/heisenberg.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace adelic {

inline constexpr const char* kSchema = "adelic-gabor/1";

enum ExitCode : int { kExitSuccess = 0, kExitNegative = 1, kExitUsage = 2, kExitAccuracy = 3 };

struct RunConfig {
  std::string command;
  std::string group = "adele";
  Prime prime = 2;
  std::string window = "gaussian";
  std::string dual = "auto";      // auto, self, or a path to a JSON window
  std::string probe = "gaussian";  // f for mod-norm and module-check
  double alpha = 0.7071067811865476;
  double beta = 0.7071067811865476;
  long long height = 5;
  long long denom_exp = 3;
  std::vector<Prime> primes{2, 3, 5, 7};
  double tol = 1e-8;
  int grid_density = 16;
  std::vector<double> densities{0.8, 0.9, 0.95, 0.99, 1.0};
  double s = 2.0;
  double t = 2.0;
  std::string q = "0";
  std::string r = "0";
  std::optional<double> y_scale;  // pair: y = phi_{y_scale}(r), default 1/alpha
  double x = 0.0;                 // reduce: real coordinate
  std::string finite;             // reduce: "p:a/b,p:a/b"
  int random_triples = 0;
  std::uint64_t seed = 1;
  bool timing = false;

  Truncation truncation() const;
  GroupSelector group_selector() const;
  /// Throws InvalidArgument on out-of-range values.
  void validate() const;
  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  nlohmann::json body;  // schema, command, config, conventions, result, verdict
  CsvTable csv;
  int exit_code = kExitSuccess;
};

/// Runs one subcommand. Usage errors and accuracy failures propagate as
/// exceptions; honest negative results come back with exit code 1.
Report run(const RunConfig& config);

/// Sorted keys, floats as %.17g, non-finite floats as strings, one trailing newline.
std::string canonical_json(const nlohmann::json& j);
std::string emit(const Report& report, const std::string& format);

/// Known subcommands.
const std::vector<std::string>& subcommands();

}  // namespace adelic
