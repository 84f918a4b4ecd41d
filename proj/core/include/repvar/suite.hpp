#pragma once

#include <string>
#include <vector>

#include "repvar/json_io.hpp"

namespace repvar {

struct CheckResult {
  std::string id;      // "A1".."A11" for acceptance criteria, else module tag
  std::string name;
  std::string group;   // core, trace_lab, irreducibility, sgood, fibers,
                       // deform, surface
  bool pass = false;
  double seconds = 0;
  std::string details;
};

struct SuiteReport {
  std::vector<CheckResult> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
  json to_json() const;
};

// Runs the acceptance criteria and module invariant suites.  `group_filter`
// restricts to one group (empty: everything); `acceptance_only` keeps just
// the A1..A11 criteria.
SuiteReport run_suite(const std::string& group_filter = "",
                      bool acceptance_only = false);

}  // namespace repvar
