#include "jsrec/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <vector>

#include "commands.hpp"
#include "jsrec/error.hpp"
#include "jsrec/matrix_io.hpp"

namespace jsrec::cli {

std::string fmt(const char* format, double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, format, value);
  return buf;
}

void add_config_option(CLI::App& sub, std::string& path) {
  sub.add_option("--config", path, "Flat key=value file; keys are long flag names")->check(CLI::ExistingFile);
}

void apply_config(CLI::App& sub, const std::string& path) {
  if (path.empty()) return;
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read config file " + path);
  const io::KeyValues kv = io::read_key_values(is);
  for (const auto& [key, value] : kv) {
    if (key == "config") continue;
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr) throw precondition_error("unknown config key '" + key + "' for " + sub.get_name());
    if (opt->count() > 0) continue;  // command line wins
    opt->add_result(value);
    opt->run_callback();
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app("Joint sparse recovery from multiple measurement vectors", "jsrec");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::vector<Command> commands{add_bench(app), add_bounds(app), add_verify(app), add_demo(app)};

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.back()->help());
    return usage_error;
  }

  for (auto& cmd : commands) {
    if (!app.got_subcommand(cmd.app)) continue;
    try {
      return cmd.run(out, err);
    } catch (const precondition_error& e) {
      err << "error: " << e.what() << '\n';
      return usage_error;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << '\n';
      return usage_error;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return runtime_failure;
    }
  }
  return usage_error;
}

}  // namespace jsrec::cli
