#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace qhyp {

struct VerifyConfig {
  int n = 1;
  int nu = 1;
  double lambda = 1.0;
  std::vector<double> radii{5.0, 10.0, 20.0, 40.0};
  std::uint64_t seed = 42;
};

struct Check {
  std::string id;
  std::string anchor;  // identity under test, as a formula
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  nlohmann::json extra = nlohmann::json::object();  // data series (e.g. defect column)

  bool pass() const;
  nlohmann::json to_json(const VerifyConfig& cfg) const;
};

const std::vector<std::string>& suite_names();  // without "all"

/// Runs one named suite; throws InvalidArgument for unknown names.
SuiteReport run_suite(const std::string& name, const VerifyConfig& cfg);

/// JSON document for `name` (schema 1); "all" nests every suite in order.
nlohmann::json verify_report(const std::string& name, const VerifyConfig& cfg);

}  // namespace qhyp
