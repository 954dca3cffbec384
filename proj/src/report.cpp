#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bott/suites.hpp"

namespace bott {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!trim(item).empty()) out.push_back(trim(item));
  return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  std::istringstream is(v);
  T x{};
  is >> x;
  if (!is || !is.eof()) throw ConfigError("bad value for " + key + ": " + v);
  return x;
}

std::string format_residual(const std::optional<double>& r) {
  if (!r) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", *r);
  return buf;
}

}  // namespace

RunConfig apply_config_file(const std::string& path, RunConfig c) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
    if (key == "n") c.n = parse_number<int>(key, v);
    else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, v);
    else if (key == "tol" || key == "tol_predicate") c.tol_predicate = parse_number<double>(key, v);
    else if (key == "tol_distance") c.tol_distance = parse_number<double>(key, v);
    else if (key == "samples") c.samples = parse_number<int>(key, v);
    else if (key == "suite" || key == "suites") c.suites = split_list(v);
    else if (key == "out" || key == "output") c.output = v;
    else if (key == "format") c.format = v;
    else if (key == "dimension_cap") c.dimension_cap = parse_number<int>(key, v);
    else throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key " + key);
  }
  return c;
}

nlohmann::json to_json(const RunConfig& c) {
  return {{"n", c.n},
          {"seed", c.seed},
          {"tol_predicate", c.tol_predicate},
          {"tol_distance", c.tol_distance},
          {"samples", c.samples},
          {"suites", c.suites},
          {"output", c.output},
          {"format", c.format},
          {"inject_fault", c.inject_fault},
          {"dimension_cap", c.dimension_cap}};
}

nlohmann::json report_json(const RunConfig& config, const std::vector<CheckResult>& results) {
  nlohmann::json rs = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json e{{"check_id", r.check_id},
                     {"status", to_string(r.status)},
                     {"max_residual", r.max_residual ? nlohmann::json(*r.max_residual) : nlohmann::json(nullptr)},
                     {"witness", r.witness},
                     {"ref", r.ref},
                     {"elapsed_ms", r.elapsed_ms}};
    rs.push_back(std::move(e));
  }
  const Summary s = summarize(results);
  return {{"config", to_json(config)}, {"results", rs}, {"summary", {{"pass", s.pass}, {"fail", s.fail}, {"skip", s.skip}}}};
}

std::string report_text(const std::vector<CheckResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) {
    std::string st = to_string(r.status);
    for (auto& ch : st) ch = static_cast<char>(std::toupper(ch));
    os << st << "  " << r.check_id << "  residual=" << format_residual(r.max_residual) << "  ref=" << r.ref;
    if (r.status == Status::fail && r.witness.contains("description"))
      os << "  witness=" << r.witness["description"].get<std::string>();
    os << "\n";
  }
  const Summary s = summarize(results);
  os << "summary: pass=" << s.pass << " fail=" << s.fail << " skip=" << s.skip << "\n";
  return os.str();
}

void emit_report(const RunConfig& config, const std::vector<CheckResult>& results, const std::string& format,
                 const std::string& path) {
  if (results.empty()) throw std::invalid_argument("emit_report: no results");
  const std::string body = format == "text" ? report_text(results) : report_json(config, results).dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << body;
    std::cout.flush();
    if (!std::cout) throw std::runtime_error("cannot write report to stdout");
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << body;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace bott
