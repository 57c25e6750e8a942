// qrefrig: quantum Otto/Stirling refrigerator ledgers, sweeps and figure data.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qrefrig/cli.hpp"
#include "qrefrig/errors.hpp"

namespace {

std::string flag_name(std::string key) {
  for (auto& ch : key) {
    if (ch == '_') ch = '-';
  }
  return "--" + key;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace qrefrig;

  CLI::App app{"Quantum refrigerator cycles with anharmonic working media"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cli::kToolVersion));

  std::string config_path;
  app.add_option("--config", config_path, "flat key = value config file; flags win");
  std::map<std::string, std::string> overrides;
  std::map<std::string, CLI::Option*> options;
  for (const auto& key : cli::config_keys()) {
    options[key] = app.add_option(flag_name(key), overrides[key], "config key '" + key + "'");
  }

  auto* spectrum = app.add_subcommand("spectrum", "energy levels of a medium (JSON)")->fallthrough();
  std::string cycle_name;
  auto* cycle = app.add_subcommand("cycle", "one cycle ledger (JSON)")->fallthrough();
  cycle->add_option("type", cycle_name, "otto | stirling | classical-otto")
      ->required()
      ->check(CLI::IsMember({"otto", "stirling", "classical-otto"}));
  auto* sweep = app.add_subcommand("sweep", "COP and energy cost over a g grid (CSV)")->fallthrough();
  std::string figure_name;
  auto* figure = app.add_subcommand("figure", "figure data (CSV)")->fallthrough();
  figure->add_option("name", figure_name, "fig2a | fig2b | fig3a | fig3b | figS2")->required();
  auto* oracle = app.add_subcommand("oracle", "oracle comparisons")->fallthrough();
  oracle->require_subcommand(1);
  auto* compare = oracle->add_subcommand("compare", "halving-test order report (JSON)")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cli::RunConfig cfg;
    if (!config_path.empty()) cli::apply_config_file(cfg, config_path);
    for (const auto& key : cli::config_keys()) {
      if (options[key]->count() > 0) cli::set(cfg, key, overrides[key]);
    }

    std::string out;
    if (spectrum->parsed()) {
      out = cli::run_spectrum(cfg);
    } else if (cycle->parsed()) {
      cfg.cycle = parse_cycle_type(cycle_name);
      out = cli::run_cycle(cfg);
    } else if (sweep->parsed()) {
      out = cli::run_sweep(cfg);
    } else if (figure->parsed()) {
      out = cli::run_figure(figure_name, cfg);
    } else if (compare->parsed()) {
      out = cli::run_oracle_compare(cfg);
    }

    if (cfg.output.empty()) {
      std::cout << out;
    } else {
      cli::write_atomically(cfg.output, out);
    }
    return 0;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
