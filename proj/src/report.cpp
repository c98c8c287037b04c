#include "cheeger_gap/report.hpp"

#include <cmath>
#include <sstream>

namespace cheeger_gap {

CheckReport::Check& CheckReport::add(std::string name, bool passed, std::string detail,
                                     double measured, double tolerance) {
  checks.push_back({std::move(name), passed, std::move(detail), measured, tolerance});
  return checks.back();
}

bool CheckReport::ok() const noexcept { return first_failure() == nullptr; }

const CheckReport::Check* CheckReport::first_failure() const noexcept {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

const CheckReport::Check* CheckReport::find(const std::string& name) const noexcept {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string CheckReport::summary() const {
  std::ostringstream os;
  os.precision(6);
  bool first = true;
  for (const auto& c : checks) {
    if (!first) os << "; ";
    os << c.name << ": " << (c.passed ? "pass" : "FAIL");
    if (!std::isnan(c.measured)) {
      os << " [" << c.measured;
      if (!std::isnan(c.tolerance)) os << " vs " << c.tolerance;
      os << "]";
    }
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    first = false;
  }
  return os.str();
}

}  // namespace cheeger_gap
