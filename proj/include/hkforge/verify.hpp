#pragma once
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hkforge/json_io.hpp"
#include "hkforge/sampling.hpp"

namespace hkforge {

struct RunConfig {
  std::uint64_t seed = 7;
  std::map<std::string, double> tolerances;  // per-check overrides keyed by check name
  std::optional<double> tolerance_all;        // replaces every tolerance when set
  int nodes = 4096;
  int series_order = 12;
  std::string format = "json";  // json | table
};

// Keys: seed, tolerances{name: tol}, tolerance_all, nodes, series_order, format.
RunConfig run_config_from_json(const Json& j);
RunConfig load_run_config(const std::string& path);
// HKFORGE_SEED overrides the configured seed.
void apply_environment(RunConfig& cfg);
void validate_run_config(const RunConfig& cfg);

struct Measure {
  std::vector<double> computed, reference;
  double abs_err = 0;
  double rel_err = 0;  // compared against the tolerance
  std::string note;
};

struct CheckContext {
  const RunConfig& cfg;
  Rng rng;
};

struct CheckSpec {
  std::string name;
  std::string anchor;  // identity or statement being checked
  std::string module;
  std::vector<int> criteria;            // acceptance criteria served (1..10)
  std::vector<std::string> properties;  // property ids covered
  double tol = 0;
  std::function<Measure(CheckContext&)> run;
};

struct CheckResult {
  std::string name, anchor, module;
  std::vector<int> criteria;
  std::vector<std::string> properties;
  std::vector<double> computed, reference;
  double abs_err = 0, rel_err = 0, tol = 0;
  bool pass = false;
  std::string note;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;  // sorted by name
  int passed = 0, failed = 0;
  bool all_pass() const { return failed == 0 && !checks.empty(); }
};

const std::vector<CheckSpec>& check_registry();
// Property ids of every module's invariants; the registry must cover each one.
const std::vector<std::string>& required_properties();
const std::vector<std::string>& module_names();

using CheckFilter = std::function<bool(const CheckSpec&)>;
VerificationReport run_checks(const std::string& label, const CheckFilter& keep, const RunConfig& cfg);
// suite: "all" or a module name; usage error otherwise.
VerificationReport run_verification(const std::string& suite, const RunConfig& cfg);
VerificationReport run_criterion(int criterion, const RunConfig& cfg);

Json report_to_json(const VerificationReport& r);
std::string report_to_table(const VerificationReport& r);
std::string format_report(const VerificationReport& r, const std::string& format);

}  // namespace hkforge
