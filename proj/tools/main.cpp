#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ssusy/cli.hpp"

int main(int argc, char** argv) {
  using namespace ssusy::cli;
  CLI::App app{"Supersymmetry of a free particle with a point singularity"};
  std::string command, config_path, inline_system, scan, format = "default";
  RunConfig config;
  app.add_option("command", command, "classify | spectrum | verify | scan | half-parity")->required();
  app.add_option("--config", config_path, "system JSON file");
  app.add_option("--system", inline_system, "inline system JSON");
  app.add_option("--n-levels", config.n_levels, "number of levels (default 10)");
  app.add_option("--output", config.output, "write results here instead of stdout");
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"default", "json", "csv"}));
  app.add_option("--scan", scan, "<param>:<from>:<to>:<steps>");
  CLI11_PARSE(app, argc, argv);

  try {
    config.command = parse_command(command);
    config.format = format == "json" ? Format::Json : (format == "csv" ? Format::Csv : Format::Default);
    if (!scan.empty()) config.scan = parse_scan(scan);
    config.tol = tolerance_from_env();
    if (!inline_system.empty() == !config_path.empty()) {
      std::cerr << "error: give exactly one of --config and --system\n";
      return 2;
    }
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "error: cannot read " << config_path << "\n";
        return 2;
      }
      std::stringstream ss;
      ss << in.rdbuf();
      config.system_json = ss.str();
    } else {
      config.system_json = inline_system;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return run(config, std::cout, std::cerr);
}
