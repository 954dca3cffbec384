#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace bott {

struct RunConfig {
  int n = 1;
  std::uint64_t seed = 42;
  double tol_predicate = 1e-10;
  double tol_distance = 1e-9;
  int samples = 25;
  std::vector<std::string> suites{"all"};
  std::string output;  // empty: stdout
  std::string format = "json";
  bool inject_fault = false;  // run every suite on its corrupted fixture instead of the real data
  int dimension_cap = 64;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// throws ConfigError
void validate(const RunConfig& c);
std::vector<std::string> expand_suites(const std::vector<std::string>& suites);
// `key = value` lines with # comments, applied on top of base
RunConfig apply_config_file(const std::string& path, RunConfig base);
nlohmann::json to_json(const RunConfig& c);

enum class Status { pass, fail, skip };
std::string to_string(Status s);

struct CheckResult {
  std::string check_id;
  Status status = Status::skip;
  std::optional<double> max_residual;
  nlohmann::json witness;  // null, a serialized matrix, or a description
  std::string ref;
  long elapsed_ms = 0;
};

std::vector<CheckResult> run_suite(const RunConfig& config);

struct Summary {
  int pass = 0, fail = 0, skip = 0;
};
Summary summarize(const std::vector<CheckResult>& results);

nlohmann::json report_json(const RunConfig& config, const std::vector<CheckResult>& results);
std::string report_text(const std::vector<CheckResult>& results);
// path empty writes to stdout; throws std::runtime_error on I/O failure
void emit_report(const RunConfig& config, const std::vector<CheckResult>& results, const std::string& format,
                 const std::string& path);

}  // namespace bott
