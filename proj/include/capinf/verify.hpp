#pragma once

#include <string>
#include <vector>

namespace capinf {

/// One pass/fail line of a verification suite. `detail` spells out the
/// measured values and the bound they were held to, so a failing line can be
/// read without rerunning anything.
struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
};

/// Gate suites in execution order: quantitative anchors first (the exact
/// radial formulas), then the qualitative dichotomies, then the
/// coefficient-robustness rerun. Every suite is deterministic; all grids,
/// windows and schedules are frozen inside this module.
std::vector<std::string> acceptance_suites();

/// Cheap invariant suites, useful as a smoke check; not part of the gate.
std::vector<std::string> property_suites();

/// acceptance_suites() followed by property_suites().
std::vector<std::string> suite_names();

/// Run one suite by name. Unknown names throw ValidationError.
SuiteReport run_suite(const std::string& name);

/// Every acceptance suite, in order.
std::vector<SuiteReport> run_acceptance();

/// Fixed-width terminal rendering: one PASS/FAIL line per check plus a
/// summary line for the suite.
std::string render_text(const SuiteReport& report);

}  // namespace capinf
