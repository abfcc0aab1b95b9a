#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace jsrec::cli {

enum ExitCode : int { ok = 0, runtime_failure = 1, usage_error = 2 };

/// Entry point of the `jsrec` tool. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// ---------------------------------------------------------------------------
// Property suites behind `jsrec verify`.

struct SuiteConfig {
  int seeds = 100;  // instances per iff-suite
  bool quick = false;
  int mp_m = 1000;
  int mp_k = 250;
  std::uint64_t seed = 1;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws precondition_error for an
/// unknown name.
std::vector<CheckResult> run_suite(std::string_view name, const SuiteConfig& config);

}  // namespace jsrec::cli
