#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fried/cli.hpp"
#include "fried/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Dynamical zeta functions, torsion and Selberg factorization on solvable models"};
  app.require_subcommand(1);
  std::string config_path;
  std::vector<std::string> overrides;
  for (const auto& name : fried::cli::command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("-c,--config", config_path, "section.key = value configuration file");
    sub->add_option("-s,--set", overrides, "override section.key=value (repeatable)");
  }
  std::string keys_help = "\nConfiguration keys:\n";
  for (const auto& [k, v] : fried::cli::known_keys()) keys_help += "  " + k + "  " + v + "\n";
  app.footer(keys_help);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  fried::cli::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = fried::cli::RunConfig::from_file(config_path);
    for (const auto& o : overrides) cfg.assign(o);
  } catch (const fried::Error& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 1;
  }
  return fried::cli::run_command(command, cfg, std::cout, std::cerr);
}
