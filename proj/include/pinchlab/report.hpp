#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace pinchlab {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Ordered list of named pass/fail checks with witnesses in `detail`.
struct Report {
  std::string name;
  std::vector<Check> checks;
  std::vector<std::string> findings;  // informational, never affect passed()

  void add(std::string check, bool ok, std::string detail = {}) {
    checks.push_back({std::move(check), ok, std::move(detail)});
  }
  void merge(const Report& other) {
    for (const auto& c : other.checks) checks.push_back({other.name + ": " + c.name, c.passed, c.detail});
    for (const auto& f : other.findings) findings.push_back(other.name + ": " + f);
  }
  [[nodiscard]] bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
  [[nodiscard]] std::size_t failures() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; }));
  }
};

inline std::ostream& operator<<(std::ostream& os, const Report& r) {
  os << "== " << r.name << " ==\n";
  for (const auto& c : r.checks) {
    os << (c.passed ? "  PASS  " : "  FAIL  ") << c.name;
    if (!c.detail.empty()) os << "  [" << c.detail << ']';
    os << '\n';
  }
  for (const auto& f : r.findings) os << "  note  " << f << '\n';
  os << (r.passed() ? "VERDICT: PASS" : "VERDICT: FAIL") << " (" << r.checks.size() - r.failures() << '/'
     << r.checks.size() << ")\n";
  return os;
}

}  // namespace pinchlab
