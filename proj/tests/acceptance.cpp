// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "cchain/verify.hpp"

#include <cstdio>
#include <exception>

int main() {
  using namespace cchain;
  const VerifyOptions opts;
  int failures = 0;
  for (const auto& c : acceptance_criteria()) {
    CheckResult r;
    try {
      r = c.run(opts);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    if (!r.passed) ++failures;
    std::printf("%s %2d %-24s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL", c.id, c.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(acceptance_criteria().size()) - failures,
              acceptance_criteria().size());
  return failures == 0 ? 0 : 1;
}
