#include <filesystem>
#include <fstream>
#include <sstream>

#include "bott/suites.hpp"
#include "doctest.h"

using namespace bott;

namespace {

nlohmann::json strip_elapsed(nlohmann::json j) {
  for (auto& r : j["results"]) r.erase("elapsed_ms");
  return j;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("bottcheck_test_" + name);
}

}  // namespace

TEST_CASE("chains suite is deterministic for a fixed seed") {
  RunConfig c;
  c.suites = {"chains"};
  c.seed = 42;
  const auto a = report_json(c, run_suite(c)), b = report_json(c, run_suite(c));
  CHECK(strip_elapsed(a).dump() == strip_elapsed(b).dump());
  CHECK(a["summary"]["fail"] == 0);
}

TEST_CASE("homotopy suite passes and carries no residuals") {
  RunConfig c;
  c.suites = {"homotopy"};
  const auto rs = run_suite(c);
  CHECK(summarize(rs).fail == 0);
  for (const auto& r : rs) CHECK_FALSE(r.max_residual.has_value());
}

TEST_CASE("injected faults fail with witnesses") {
  RunConfig c;
  c.suites = {"algebra", "homotopy"};
  c.inject_fault = true;
  const auto rs = run_suite(c);
  const Summary s = summarize(rs);
  CHECK(s.fail >= 2);
  for (const auto& r : rs)
    if (r.status == Status::fail) CHECK_FALSE(r.witness.is_null());
  bool found = false;
  for (const auto& r : rs)
    if (r.check_id == "homotopy.periodicity") {
      CHECK(r.status == Status::fail);
      CHECK(r.witness["i"] == 3);
      found = true;
    }
  CHECK(found);
}

TEST_CASE("every suite has a fixture that is caught") {
  RunConfig c;
  c.samples = 3;
  const auto rs = run_suite(c);
  for (const std::string suite : {"algebra", "chains", "inclusions", "homotopy"}) {
    int fixtures = 0;
    for (const auto& r : rs)
      if (r.check_id.rfind("fixture." + suite + ".", 0) == 0) {
        ++fixtures;
        CHECK(r.status == Status::pass);
        CHECK_FALSE(r.witness.is_null());
      }
    CHECK(fixtures >= 1);
  }
}

TEST_CASE("json report round-trips through the parser") {
  RunConfig c;
  c.suites = {"algebra"};
  const auto rs = run_suite(c);
  const auto j = report_json(c, rs);
  const auto back = nlohmann::json::parse(j.dump());
  CHECK(back == j);
  CHECK(back["results"].size() == rs.size());
  CHECK(back["summary"]["pass"].get<int>() + back["summary"]["fail"].get<int>() + back["summary"]["skip"].get<int>() ==
        static_cast<int>(rs.size()));
  for (const auto& r : back["results"])
    for (const char* key : {"check_id", "status", "max_residual", "witness", "ref", "elapsed_ms"}) CHECK(r.contains(key));
  CHECK(back["config"]["n"] == 1);
}

TEST_CASE("report files and text format") {
  RunConfig c;
  c.suites = {"homotopy"};
  const auto rs = run_suite(c);
  const auto p = temp_path("report.json");
  emit_report(c, rs, "json", p.string());
  std::ifstream in(p);
  const auto j = nlohmann::json::parse(in);
  CHECK(strip_elapsed(j) == strip_elapsed(report_json(c, rs)));
  std::filesystem::remove(p);

  const std::string text = report_text(rs);
  CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(rs.size()) + 1);
  CHECK(text.find("PASS  homotopy.tables") != std::string::npos);

  CHECK_THROWS_AS(emit_report(c, rs, "json", "/nonexistent-dir/x/report.json"), std::runtime_error);
  CHECK_THROWS_AS(emit_report(c, {}, "json", ""), std::invalid_argument);
}

TEST_CASE("config validation and config files") {
  RunConfig c;
  c.n = 5;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.dimension_cap = 80;
  CHECK_NOTHROW(validate(c));
  c = RunConfig{};
  c.suites = {"topology"};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = RunConfig{};
  c.format = "xml";
  CHECK_THROWS_AS(validate(c), ConfigError);

  const auto p = temp_path("config.txt");
  {
    std::ofstream out(p);
    out << "# defaults for CI\n"
        << "n = 2\n"
        << "seed = 7   # trailing comment\n"
        << "suite = algebra, homotopy\n"
        << "tol = 1e-11\n"
        << "format = text\n";
  }
  const RunConfig f = apply_config_file(p.string(), RunConfig{});
  CHECK(f.n == 2);
  CHECK(f.seed == 7);
  CHECK(f.suites == std::vector<std::string>{"algebra", "homotopy"});
  CHECK(f.tol_predicate == 1e-11);
  CHECK(f.format == "text");
  {
    std::ofstream out(p);
    out << "colour = blue\n";
  }
  CHECK_THROWS_AS(apply_config_file(p.string(), RunConfig{}), ConfigError);
  std::filesystem::remove(p);
  CHECK_THROWS_AS(apply_config_file("/nonexistent/config", RunConfig{}), ConfigError);
  CHECK(expand_suites({"all"}).size() == 4);
  CHECK(expand_suites({"homotopy", "algebra"}) == std::vector<std::string>{"algebra", "homotopy"});
}
