// SPDX-License-Identifier: Apache-2.0
//
// The acceptance suite: one entry per shipped guarantee, each with its
// tolerance pinned in code.  Used by the dedicated test binary and by the
// CLI selftest command.

#ifndef IMPROJ_ACCEPTANCE_HPP
#define IMPROJ_ACCEPTANCE_HPP

#include <functional>
#include <string>
#include <vector>

namespace improj {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
  double seconds = 0.0;
};

using AcceptanceReporter = std::function<void(const CriterionResult&)>;

// Runs every criterion; returns true iff all pass.  `only` restricts to a
// single criterion id (0 = all).
bool run_acceptance(const AcceptanceReporter& report, int only = 0);

}  // namespace improj

#endif  // IMPROJ_ACCEPTANCE_HPP
