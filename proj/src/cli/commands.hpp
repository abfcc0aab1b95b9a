#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include <CLI11.hpp>

namespace jsrec::cli {

struct Command {
  CLI::App* app = nullptr;
  std::function<int(std::ostream& out, std::ostream& err)> run;
};

Command add_bench(CLI::App& parent);
Command add_bounds(CLI::App& parent);
Command add_verify(CLI::App& parent);
Command add_demo(CLI::App& parent);

/// Adds `--config <path>` to a subcommand. Keys are long option names without
/// the leading dashes; flags given on the command line win.
void add_config_option(CLI::App& sub, std::string& path);
void apply_config(CLI::App& sub, const std::string& path);

/// printf-style formatting into a std::string.
std::string fmt(const char* format, double value);

}  // namespace jsrec::cli
