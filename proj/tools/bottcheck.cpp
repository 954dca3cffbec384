#include <iostream>

#include "CLI11.hpp"
#include "bott/suites.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Bott periodicity verification engine"};
  bott::RunConfig defaults;
  std::string config_file;
  int n = 0, samples = 0, cap = 0;
  std::uint64_t seed = 0;
  double tol = 0, tol_distance = 0;
  std::vector<std::string> suites;
  std::string out, format;
  bool inject = false;

  app.add_option("--config", config_file, "key = value file with defaults");
  auto* o_n = app.add_option("--n", n, "chains live on R^16n");
  auto* o_seed = app.add_option("--seed", seed, "base seed");
  auto* o_tol = app.add_option("--tol", tol, "predicate tolerance");
  auto* o_tol_d = app.add_option("--tol-distance", tol_distance, "distance tolerance");
  auto* o_samples = app.add_option("--samples", samples, "samples per randomized check");
  auto* o_suite = app.add_option("--suite", suites, "algebra, chains, inclusions, homotopy or all")->delimiter(',');
  auto* o_out = app.add_option("--out", out, "report path (stdout if omitted)");
  auto* o_format = app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  auto* o_cap = app.add_option("--dimension-cap", cap, "largest allowed 16n");
  app.add_flag("--inject-fault", inject, "run every suite on its corrupted fixture");
  CLI11_PARSE(app, argc, argv);

  bott::RunConfig c = defaults;
  try {
    if (!config_file.empty()) c = bott::apply_config_file(config_file, c);
    if (*o_n) c.n = n;
    if (*o_seed) c.seed = seed;
    if (*o_tol) c.tol_predicate = tol;
    if (*o_tol_d) c.tol_distance = tol_distance;
    if (*o_samples) c.samples = samples;
    if (*o_suite) c.suites = suites;
    if (*o_out) c.output = out;
    if (*o_format) c.format = format;
    if (*o_cap) c.dimension_cap = cap;
    c.inject_fault = inject;
    bott::validate(c);
  } catch (const bott::ConfigError& e) {
    std::cerr << "bottcheck: " << e.what() << "\n";
    return 2;
  }

  const auto results = bott::run_suite(c);
  try {
    bott::emit_report(c, results, c.format, c.output);
  } catch (const std::exception& e) {
    std::cerr << "bottcheck: " << e.what() << "\n";
    return 2;
  }
  return bott::summarize(results).fail == 0 ? 0 : 1;
}
