// Runs acceptance criteria 1-10 against the shipped fixtures and prints one
// line per criterion. Exit status 1 if any criterion fails.

#include <cstdio>
#include <iostream>

#include "cdplab/verify.hpp"

int main() {
  cdplab::VerifyOptions options;
  options.fixture_dir = CDPLAB_FIXTURE_DIR;
  int failed = 0;
  for (int k = 1; k <= 10; ++k) {
    const cdplab::CheckResult r = cdplab::run_criterion(k, options);
    std::cout << cdplab::format_check_line(r) << std::endl;
    if (r.status != cdplab::CheckStatus::Pass) ++failed;
  }
  std::cout << (failed == 0 ? "acceptance: 10/10 criteria passed" : "acceptance: FAILED") << std::endl;
  if (failed) std::printf("%d criteria did not pass\n", failed);
  return failed == 0 ? 0 : 1;
}
