// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite runner: one pass/fail line per criterion.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "improj/acceptance.hpp"

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  bool ok = improj::run_acceptance(
      [](const improj::CriterionResult& r) {
        std::printf("[%s] %2d. %s (%.2fs)%s%s\n", r.pass ? "PASS" : "FAIL",
                    r.id, r.name.c_str(), r.seconds,
                    r.details.empty() ? "" : " -- ", r.details.c_str());
        std::fflush(stdout);
      },
      only);
  return ok ? 0 : 1;
}
