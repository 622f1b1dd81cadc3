// Command-line front end: sqgtool <verb> [options] [key=value ...]

#include <iostream>

#include "CLI11.hpp"
#include "sqg/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Dissipative SQG solver and inequality checks"};
  app.require_subcommand(1);

  sqg::Command command;
  std::string config_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "key=value config file");
    sub->add_option("-o,--output", command.output_dir, "output directory")->capture_default_str();
    sub->add_option("overrides", command.overrides, "key=value overrides");
  };

  auto* simulate = app.add_subcommand("simulate", "integrate the SQG equation");
  auto* picard = app.add_subcommand("picard", "compute Picard iterates");
  auto* analyze = app.add_subcommand("analyze", "Besov / Gevrey / X_T report for snapshots");
  auto* verify = app.add_subcommand("verify", "run inequality checks");
  auto* symbols = app.add_subcommand("symbols", "list (and optionally probe) bilinear symbols");
  for (auto* sub : {simulate, picard, analyze, verify, symbols}) add_common(sub);
  std::string input;
  analyze->add_option("-i,--input", input, "snapshot file or directory (same as input=...)");
  verify->add_option("--check", command.checks, "check id (repeatable; default all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sqg::kExitUsage;
  }
  command.verb = app.get_subcommands().front()->get_name();
  if (!config_path.empty()) command.config_path = config_path;
  if (!input.empty()) command.overrides.insert(command.overrides.begin(), "input=" + input);
  return sqg::run(command, std::cout, std::cerr);
}
