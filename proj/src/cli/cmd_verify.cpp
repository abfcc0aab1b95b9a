#include <memory>
#include <ostream>

#include "commands.hpp"
#include "jsrec/cli.hpp"

namespace jsrec::cli {

namespace {

struct VerifyArgs {
  std::string suite = "all";
  SuiteConfig config;
  std::string config_path;
};

}  // namespace

Command add_verify(CLI::App& parent) {
  auto a = std::make_shared<VerifyArgs>();
  CLI::App* sub = parent.add_subcommand("verify", "Run property suites and print PASS/FAIL per check");
  std::string names = "all";
  for (const auto& n : suite_names()) names += ", " + n;
  sub->add_option("suite", a->suite, "Suite name: " + names)->capture_default_str();
  sub->add_option("--seeds", a->config.seeds, "Instances per suite")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_flag("--quick", a->config.quick, "Reduced-scale run");
  sub->add_option("--m", a->config.mp_m, "Rows for the mp suite")->capture_default_str();
  sub->add_option("--k", a->config.mp_k, "Columns for the mp suite")->capture_default_str();
  sub->add_option("--seed", a->config.seed, "Base seed")->capture_default_str();
  add_config_option(*sub, a->config_path);

  Command cmd;
  cmd.app = sub;
  cmd.run = [a, sub](std::ostream& out, std::ostream&) {
    apply_config(*sub, a->config_path);
    const auto results = run_suite(a->suite, a->config);
    int passed = 0;
    for (const auto& r : results) {
      out << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
      passed += r.pass;
    }
    out << passed << '/' << results.size() << " checks passed\n";
    return passed == static_cast<int>(results.size()) ? 0 : 1;
  };
  return cmd;
}

}  // namespace jsrec::cli
