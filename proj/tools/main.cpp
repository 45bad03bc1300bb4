#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qcond/cli.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qcond::cli::ConfigError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  using qcond::cli::ConfigError;
  using qcond::cli::IoError;
  using qcond::cli::RunConfig;

  CLI::App app{
      "qcond: projective-measurement calculus with EPR, delayed-choice "
      "eraser, Wheeler double-slit and Everett-branch experiments"};
  app.require_subcommand(1);

  std::string config_path, out_path, format_name, mode_name;
  std::uint64_t seed = 0;

  const char* names[] = {"epr", "eraser", "wheeler", "orderprop", "everett"};
  const char* descs[] = {
      "singlet joint distribution under both measurement orders",
      "delayed-choice quantum eraser screen/detector tables",
      "double slit with screen-in / screen-out delayed choice",
      "fuzz campaign for cross-slot measurement order invariance",
      "EPR branch ledger: order independence and branch stability"};
  for (int i = 0; i < 5; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], descs[i]);
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--seed", seed, "campaign seed (overrides config)");
    sub->add_option("--out", out_path, "output path (default: stdout)");
    sub->add_option("--format", format_name, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    if (std::string{names[i]} == "eraser")
      sub->add_option("--mode", mode_name, "paper or unitary")
          ->check(CLI::IsMember({"paper", "unitary"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qcond::cli::kExitConfig;
  }

  CLI::App* sub = app.get_subcommands().front();

  try {
    RunConfig config;
    config.experiment = qcond::cli::experiment_from_name(sub->get_name());
    if (sub->count("--config")) {
      config = qcond::cli::parse_config(read_file(config_path));
      if (config.experiment != qcond::cli::experiment_from_name(sub->get_name()))
        throw ConfigError("config file targets experiment '" +
                          qcond::cli::experiment_name(config.experiment) +
                          "' but the '" + sub->get_name() +
                          "' subcommand was invoked");
    }
    // Flags override file values.
    if (sub->count("--seed")) config.seed = seed;
    if (sub->count("--out")) config.out = out_path;
    if (sub->count("--format"))
      config.format = format_name == "json" ? qcond::cli::Format::json
                                            : qcond::cli::Format::csv;
    if (sub->get_name() == "eraser" && sub->count("--mode"))
      config.eraser.mode = mode_name;
    qcond::cli::validate(config);
    return qcond::cli::run(config);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return qcond::cli::kExitConfig;
  } catch (const IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return qcond::cli::kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
