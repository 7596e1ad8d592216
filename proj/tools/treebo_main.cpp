#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "treebo/config.hpp"
#include "treebo/harness.hpp"

namespace {

using FlagList = std::vector<std::pair<std::string, CLI::Option*>>;

// every config key doubles as a --key command-line flag; flags override the
// config file, which overrides the built-in defaults
void add_config_flags(CLI::App* cmd, std::string& config_path,
                      std::map<std::string, std::string>& staging, FlagList& flags) {
  cmd->add_option("-c,--config", config_path, "key = value configuration file");
  for (const auto& key : treebo::experiment_keys()) {
    auto& slot = staging[key];
    flags.emplace_back(key, cmd->add_option("--" + key, slot, "override config key " + key));
  }
}

treebo::ExperimentConfig effective_config(const std::string& config_path,
                                          const std::map<std::string, std::string>& staging,
                                          const FlagList& flags) {
  treebo::ExperimentConfig cfg;
  if (!config_path.empty())
    cfg = treebo::experiment_from_kv(treebo::parse_kv_file(config_path), cfg);
  treebo::KvMap overrides;
  for (const auto& [key, opt] : flags)
    if (opt->count() > 0) overrides[key] = staging.at(key);
  return treebo::experiment_from_kv(overrides, cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian optimization with learned tree-structured additive models"};
  app.require_subcommand(1);

  CLI::App* run_cmd = app.add_subcommand("run", "run the configured experiment sweep");
  CLI::App* print_cmd =
      app.add_subcommand("print-config", "print the effective configuration and exit");
  std::string run_path, print_path;
  std::map<std::string, std::string> run_staging, print_staging;
  FlagList run_flags, print_flags;
  add_config_flags(run_cmd, run_path, run_staging, run_flags);
  add_config_flags(print_cmd, print_path, print_staging, print_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (print_cmd->parsed()) {
      const auto cfg = effective_config(print_path, print_staging, print_flags);
      for (const auto& [key, value] : treebo::experiment_to_kv(cfg))
        std::cout << key << " = " << value << "\n";
      return 0;
    }
    const auto cfg = effective_config(run_path, run_staging, run_flags);
    const auto result = treebo::run_experiment(cfg);
    for (const auto& c : result.cells)
      if (!c.ok)
        std::cerr << "cell " << c.algorithm << "/seed" << c.seed_index
                  << " failed: " << c.reason << "\n";
    std::cout << (result.total_cells - result.failed_cells) << "/" << result.total_cells
              << " cells completed; artifacts in " << cfg.out_dir << "\n";
    return result.failed_cells == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
