#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "suites.hpp"

namespace ywkit {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode { exit_pass = 0, exit_fail = 1, exit_config = 2, exit_internal = 3 };

inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

namespace cli_detail {

using nlohmann::json;

inline Scalar scalar_from(const json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return Scalar(j.get<long>());
    if (j.is_string()) return parse_scalar(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": expected an integer or a \"num/den\" string");
}

inline std::vector<Scalar> scalar_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<Scalar> out;
  for (const auto& x : j) out.push_back(scalar_from(x, where));
  return out;
}

inline std::vector<std::vector<Scalar>> scalar_lists(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of arrays");
  std::vector<std::vector<Scalar>> out;
  for (const auto& x : j) out.push_back(scalar_list(x, where));
  return out;
}

inline int int_from(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return j.get<int>();
}

inline void only_keys(const json& j, const std::vector<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [k, v] : j.items())
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw ConfigError(where + ": unknown key '" + k + "'");
}

inline Signature parse_sig(const std::string& text) {
  try {
    return Signature::parse(text);
  } catch (const SignatureError& e) {
    throw ConfigError(e.what());
  }
}

inline TwistClass parse_theta(const std::string& text) {
  if (text == "plus") return TwistClass::plus;
  if (text == "minus") return TwistClass::minus;
  throw ConfigError("theta must be 'plus' or 'minus', got '" + text + "'");
}

inline int parse_jobs(const std::string& text, const std::string& where) {
  if (text.empty() || text.size() > 4 || text.find_first_not_of("0123456789") != std::string::npos)
    throw ConfigError(where + ": jobs must be a positive integer, got '" + text + "'");
  const int j = std::stoi(text);
  if (j < 1) throw ConfigError(where + ": jobs must be a positive integer, got '" + text + "'");
  return j;
}

struct FileSettings {
  SuiteConfig config;
  std::optional<std::string> format, out;
  std::optional<int> jobs;
};

inline FileSettings load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
  }
  only_keys(j, {"suite", "suites", "sig", "p", "theta", "jobs", "format", "out", "reps", "nls"}, "config");
  FileSettings s;
  SuiteConfig& c = s.config;
  if (j.contains("suite") && j.contains("suites")) throw ConfigError("config: give either 'suite' or 'suites'");
  if (j.contains("suite")) {
    if (!j["suite"].is_string()) throw ConfigError("config.suite: expected a string");
    c.suites = {j["suite"].get<std::string>()};
  }
  if (j.contains("suites")) {
    if (!j["suites"].is_array()) throw ConfigError("config.suites: expected an array");
    for (const auto& x : j["suites"]) {
      if (!x.is_string()) throw ConfigError("config.suites: expected strings");
      c.suites.push_back(x.get<std::string>());
    }
    if (c.suites.empty()) throw ConfigError("empty suite list");
  }
  if (j.contains("sig")) {
    if (!j["sig"].is_string()) throw ConfigError("config.sig: expected a string such as \"2\" or \"1|2\"");
    c.sig = parse_sig(j["sig"].get<std::string>());
  }
  if (j.contains("p")) c.p = int_from(j["p"], "config.p");
  if (j.contains("theta")) {
    if (!j["theta"].is_string()) throw ConfigError("config.theta: expected \"plus\" or \"minus\"");
    c.theta = parse_theta(j["theta"].get<std::string>());
  }
  if (j.contains("jobs")) {
    s.jobs = int_from(j["jobs"], "config.jobs");
    if (*s.jobs < 1) throw ConfigError("config.jobs: must be positive");
  }
  if (j.contains("format")) {
    if (!j["format"].is_string()) throw ConfigError("config.format: expected a string");
    s.format = j["format"].get<std::string>();
  }
  if (j.contains("out")) {
    if (!j["out"].is_string()) throw ConfigError("config.out: expected a string");
    s.out = j["out"].get<std::string>();
  }
  if (j.contains("reps")) {
    const auto& r = j["reps"];
    only_keys(r, {"params", "sweep"}, "config.reps");
    if (r.contains("params")) c.rep_params = scalar_lists(r["params"], "config.reps.params");
    if (r.contains("sweep")) c.sweep = scalar_list(r["sweep"], "config.reps.sweep");
  }
  if (j.contains("nls")) {
    const auto& n = j["nls"];
    only_keys(n, {"momenta", "m_max"}, "config.nls");
    if (n.contains("momenta")) c.momenta = scalar_lists(n["momenta"], "config.nls.momenta");
    if (n.contains("m_max")) c.m_max = int_from(n["m_max"], "config.nls.m_max");
  }
  return s;
}

inline json scalars_json(const std::vector<Scalar>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

// Everything that determines the result; jobs, format and output path do not.
inline json canonical_config(const SuiteConfig& c) {
  json j;
  j["suites"] = c.suites;
  j["sig"] = c.sig ? json(c.sig->to_string()) : json(nullptr);
  j["p"] = c.p ? json(*c.p) : json(nullptr);
  j["theta"] = c.theta ? json(twist_name(*c.theta)) : json(nullptr);
  j["m_max"] = c.m_max;
  if (c.rep_params) {
    json a = json::array();
    for (const auto& v : *c.rep_params) a.push_back(scalars_json(v));
    j["rep_params"] = a;
  } else {
    j["rep_params"] = nullptr;
  }
  j["sweep"] = c.sweep ? scalars_json(*c.sweep) : json(nullptr);
  if (c.momenta) {
    json a = json::array();
    for (const auto& v : *c.momenta) a.push_back(scalars_json(v));
    j["momenta"] = a;
  } else {
    j["momenta"] = nullptr;
  }
  return j;
}

}  // namespace cli_detail

struct Counts {
  int pass = 0, fail = 0, skipped = 0;
};

inline Counts count_checks(const Report& r) {
  Counts c;
  for (const auto& ch : r.checks) {
    if (ch.status == Status::pass) ++c.pass;
    if (ch.status == Status::fail) ++c.fail;
    if (ch.status == Status::skipped) ++c.skipped;
  }
  return c;
}

inline bool all_passed(const std::vector<Report>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.passed(); });
}

// Deterministic part of the report: no timings, no job width.
inline nlohmann::json report_body(const SuiteConfig& config, const std::vector<Report>& reports) {
  using nlohmann::json;
  json body;
  const json cfg = cli_detail::canonical_config(config);
  body["config"] = cfg;
  body["config_hash"] = "fnv1a64:" + hex64(fnv1a64(cfg.dump()));
  body["tool"] = {{"name", "ywkit"}, {"version", kToolVersion}};
  body["passed"] = all_passed(reports);
  json suites = json::array();
  for (const auto& r : reports) {
    json checks = json::array();
    for (const auto& c : r.checks) {
      json payload = json::object();
      for (const auto& [k, v] : c.payload) payload[k] = v;
      checks.push_back({{"name", c.name}, {"status", status_name(c.status)}, {"detail", c.detail}, {"payload", payload}});
    }
    const Counts n = count_checks(r);
    suites.push_back({{"name", r.suite},
                      {"passed", r.passed()},
                      {"counts", {{"pass", n.pass}, {"fail", n.fail}, {"skipped", n.skipped}}},
                      {"checks", checks}});
  }
  body["suites"] = suites;
  return body;
}

inline std::string render_json(const nlohmann::json& body, long wall_ms, int jobs) {
  nlohmann::json doc;
  doc["body"] = body;
  doc["meta"] = {{"wall_time_ms", wall_ms}, {"jobs", jobs}};
  return doc.dump(2) + "\n";
}

// Counterexamples first, then one line per suite; the final line carries the
// non-deterministic metadata.
inline std::string render_text(const nlohmann::json& body, long wall_ms, int jobs) {
  std::ostringstream os;
  os << "ywkit " << body["tool"]["version"].get<std::string>() << " " << body["config_hash"].get<std::string>() << "\n";
  os << "counterexamples:\n";
  bool any = false;
  for (const auto& s : body["suites"])
    for (const auto& c : s["checks"]) {
      if (c["status"] != "fail") continue;
      any = true;
      os << "  FAIL " << s["name"].get<std::string>() << "/" << c["name"].get<std::string>() << ": "
         << c["detail"].get<std::string>() << "\n";
      for (const auto& [k, v] : c["payload"].items()) os << "    " << k << " = " << v.get<std::string>() << "\n";
    }
  if (!any) os << "  (none)\n";
  os << "suites:\n";
  for (const auto& s : body["suites"]) {
    os << "  " << s["name"].get<std::string>() << ": " << (s["passed"].get<bool>() ? "PASS" : "FAIL") << " ("
       << s["counts"]["pass"].get<int>() << " pass, " << s["counts"]["fail"].get<int>() << " fail, "
       << s["counts"]["skipped"].get<int>() << " skipped)\n";
    for (const auto& c : s["checks"]) {
      if (c["status"] == "fail") continue;
      os << "    " << c["status"].get<std::string>() << " " << c["name"].get<std::string>();
      if (!c["detail"].get<std::string>().empty()) os << " (" << c["detail"].get<std::string>() << ")";
      os << "\n";
    }
  }
  os << "result: " << (body["passed"].get<bool>() ? "PASS" : "FAIL") << "\n";
  os << "meta: wall_time_ms=" << wall_ms << " jobs=" << jobs << "\n";
  return os.str();
}

// ywkit verify <suite> [--config FILE] [--sig M|N] [--p INT] [--theta plus|minus]
//                      [--out FILE] [--format json|text] [--jobs INT]
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification suites for classical and quantum Yangians", "ywkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite, config_path, sig_text, theta_text, out_path, format, jobs_text;
  std::optional<int> p;
  verify->add_option("suite", suite, "ybe|poisson|center|drinfeld-fit|twist|fold|super|reps|nls|all");
  verify->add_option("--config", config_path, "JSON configuration file");
  verify->add_option("--sig", sig_text, "signature N or M|N");
  verify->add_option("--p", p, "truncation level");
  verify->add_option("--theta", theta_text, "plus or minus");
  verify->add_option("--out", out_path, "write the report to FILE");
  verify->add_option("--format", format, "json or text");
  verify->add_option("--jobs", jobs_text, "parallel width (default: $YWKIT_JOBS or 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_pass;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return exit_pass;
  } catch (const CLI::ParseError& e) {
    err << "ywkit: " << e.what() << "\n";
    return exit_config;
  }

  // Precedence: flags, then the config file, then YWKIT_JOBS, then defaults.
  SuiteConfig config;
  std::string out_file;
  try {
    std::optional<int> file_jobs;
    if (!config_path.empty()) {
      auto fs = cli_detail::load_config_file(config_path);
      config = fs.config;
      file_jobs = fs.jobs;
      if (fs.format && format.empty()) format = *fs.format;
      if (fs.out) out_file = *fs.out;
    }
    if (verify->count("suite")) {
      if (suite.empty()) throw ConfigError("empty suite list");
      config.suites = {suite};
    }
    if (verify->count("--sig")) config.sig = cli_detail::parse_sig(sig_text);
    if (p) config.p = *p;
    if (verify->count("--theta")) config.theta = cli_detail::parse_theta(theta_text);
    if (verify->count("--jobs")) {
      config.jobs = cli_detail::parse_jobs(jobs_text, "--jobs");
    } else if (file_jobs) {
      config.jobs = *file_jobs;
    } else if (const char* env = std::getenv("YWKIT_JOBS"); env && *env) {
      config.jobs = cli_detail::parse_jobs(env, "YWKIT_JOBS");
    }
    if (format.empty()) format = "json";
    if (format != "json" && format != "text") throw ConfigError("format must be 'json' or 'text', got '" + format + "'");
    if (verify->count("--out")) out_file = out_path;
    validate_config(config);
  } catch (const ConfigError& e) {
    err << "ywkit: config error: " << e.what() << "\n";
    return exit_config;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    auto reports = run_suites(config);
    const long wall = static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
    auto body = report_body(config, reports);
    const std::string text = format == "json" ? render_json(body, wall, config.jobs) : render_text(body, wall, config.jobs);
    if (out_file.empty()) {
      out << text;
    } else {
      std::ofstream f(out_file, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open output file '" + out_file + "'");
      f << text;
      if (!f) throw std::runtime_error("failed writing output file '" + out_file + "'");
    }
    return all_passed(reports) ? exit_pass : exit_fail;
  } catch (const ConfigError& e) {
    err << "ywkit: config error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    err << "ywkit: internal error: " << e.what() << "\n";
    return exit_internal;
  }
}

}  // namespace ywkit
