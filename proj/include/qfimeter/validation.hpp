#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace qfimeter::validation {

struct Check {
  std::string name;
  double value;
  double tolerance;
  bool pass;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;

  bool all_pass() const;
  nlohmann::json to_json() const;
};

struct Config {
  std::uint64_t seed = 7;
  /// Atom number for the fd suite.
  int n_atoms = 4;
};

/// Suite names accepted by run().
const std::vector<std::string>& suite_names();

/// Runs "fd", "quadrature", "bounds", "sampling", "limits" or "all".
/// Throws InvalidParams for an unknown suite.
Report run(const std::string& suite, const Config& config = {});

Report fd_suite(const Config& config);
Report quadrature_suite(const Config& config);
Report bounds_suite(const Config& config);
Report sampling_suite(const Config& config);
Report limits_suite(const Config& config);

}  // namespace qfimeter::validation
