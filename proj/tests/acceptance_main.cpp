// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <cstdio>

#include "repvar/suite.hpp"

int main() {
  repvar::SuiteReport report = repvar::run_suite("", /*acceptance_only=*/true);
  bool ok = true;
  for (const auto& c : report.checks) {
    std::printf("%-4s %-45s %s  (%.2fs)  %s\n", c.id.c_str(), c.name.c_str(),
                c.pass ? "PASS" : "FAIL", c.seconds, c.details.c_str());
    ok = ok && c.pass;
  }
  std::printf("acceptance: %s\n", ok ? "ALL PASS" : "FAILURES");
  return ok ? 0 : 1;
}
