#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ywkit {

enum class Status { pass, fail, skipped };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "fail";
}

// One verification check. `payload` carries a counterexample on failure and
// computed facts (dimensions, fitted values) otherwise; values are canonical
// strings so the report stays exact and byte-stable.
struct Check {
  std::string name;
  Status status = Status::pass;
  std::string detail;
  std::map<std::string, std::string> payload;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;

  Check& add(std::string name, bool ok, std::string detail = {},
             std::map<std::string, std::string> payload = {}) {
    checks.push_back(Check{std::move(name), ok ? Status::pass : Status::fail, std::move(detail),
                           std::move(payload)});
    return checks.back();
  }

  Check& skip(std::string name, std::string detail) {
    checks.push_back(Check{std::move(name), Status::skipped, std::move(detail), {}});
    return checks.back();
  }

  // Appends the checks of `other`, prefixing their names.
  void merge(const Report& other, const std::string& prefix = {}) {
    for (auto c : other.checks) {
      if (!prefix.empty()) c.name = prefix + "/" + c.name;
      checks.push_back(std::move(c));
    }
  }

  bool passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == Status::fail; });
  }

  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  std::vector<const Check*> failures() const {
    std::vector<const Check*> out;
    for (const auto& c : checks)
      if (c.status == Status::fail) out.push_back(&c);
    return out;
  }

  void sort() {
    std::stable_sort(checks.begin(), checks.end(),
                     [](const Check& a, const Check& b) { return a.name < b.name; });
  }
};

}  // namespace ywkit
