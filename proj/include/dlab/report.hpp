#pragma once

#include <string>
#include <vector>

namespace dlab {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;  // counterexample or summary numbers
};

struct Report {
  std::string suite;
  std::vector<Check> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  void add(std::string name, bool pass, std::string detail = {}) {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
  // One "PASS name  detail" line per check.
  std::string table() const {
    std::string out;
    for (const auto& c : checks) {
      out += c.pass ? "PASS " : "FAIL ";
      out += suite + "/" + c.name;
      if (!c.detail.empty()) out += "  " + c.detail;
      out += '\n';
    }
    return out;
  }
};

}  // namespace dlab
