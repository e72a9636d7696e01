#pragma once

// Named verification suites shared by `cchain verify` and the acceptance test
// binary. Every check recomputes its reference values independently of the
// route under test.

#include "cchain/serialize.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace cchain {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
};

struct VerifyOptions {
  unsigned nmax = 0;  // 0: each check's own range
  std::uint64_t seed = 42;
  std::uint64_t trials = 1'000'000;
  unsigned workers = 2;
  unsigned digits = kDefaultDigits;
};

struct Criterion {
  int id;
  std::string name;
  std::string suite;
  std::function<CheckResult(const VerifyOptions&)> run;
};

/// The twelve acceptance criteria, in order.
const std::vector<Criterion>& acceptance_criteria();

/// "routes", "roots", "factorization", "pf", "moments", "bound",
/// "diagnostics", "montecarlo" and "all".
std::vector<std::string> suite_names();

/// Throws std::invalid_argument for an unknown suite.
SuiteReport run_suite(std::string_view suite, const VerifyOptions& opts);

/// Strict interlacing of consecutive root sets for 3 <= n <= nmax.
CheckResult check_interlacing(unsigned nmax);

/// Timings break byte-identical reruns, so they are opt-in.
Json suite_json(const SuiteReport& report, bool timings = false);

}  // namespace cchain
