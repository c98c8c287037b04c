#pragma once

#include <limits>
#include <string>
#include <vector>

namespace cheeger_gap {

/// Named pass/fail checks with the measured quantity and the tolerance it was
/// held to (NaN when not numeric).
struct CheckReport {
  struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
    double measured = std::numeric_limits<double>::quiet_NaN();
    double tolerance = std::numeric_limits<double>::quiet_NaN();
  };
  std::vector<Check> checks;

  Check& add(std::string name, bool passed, std::string detail = {},
             double measured = std::numeric_limits<double>::quiet_NaN(),
             double tolerance = std::numeric_limits<double>::quiet_NaN());
  bool ok() const noexcept;
  const Check* first_failure() const noexcept;
  const Check* find(const std::string& name) const noexcept;
  std::string summary() const;
};

}  // namespace cheeger_gap
