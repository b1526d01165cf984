#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ckpt/commands.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::vector<std::string> sets;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  double tolerance = 0.0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Config file (INI-style sections)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--set", args.sets, "Override a config key, e.g. platform.n_nodes=219000");
  cmd->add_option("--out", args.out_path, "Write the CSV to this path instead of stdout");
  cmd->add_option("--seed", args.seed, "Simulation seed");
  cmd->add_option("--trials", args.trials, "Monte Carlo trials");
  cmd->add_option("--tolerance", args.tolerance, "Validation tolerance in percent");
}

int emit_result(const ckpt::cli::CommandResult& result, const std::string& out_path) {
  if (!result.table.empty()) {
    (out_path.empty() ? std::cerr : std::cout) << result.table;
  }
  if (result.csv.empty()) return result.exit_code;
  if (out_path.empty()) {
    std::cout << result.csv;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return ckpt::cli::kExitUsage;
    }
    out << result.csv;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ckpt::cli;

  CLI::App app{"Expected time and energy of periodic coordinated checkpointing: "
               "optimal periods, parameter sweeps, and Monte Carlo validation"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string fig;
  CLI::App* optimize = app.add_subcommand("optimize", "Time- and energy-optimal periods");
  CLI::App* validate = app.add_subcommand("validate", "Monte Carlo vs analytical model");
  CLI::App* sweep = app.add_subcommand("sweep", "One-axis parameter sweep to CSV");
  CLI::App* reproduce = app.add_subcommand("reproduce", "Preset trade-off sweeps");
  reproduce->add_option("fig", fig, "One of fig1, fig2, fig3")->required();
  for (CLI::App* cmd : {optimize, validate, sweep, reproduce}) add_common(cmd, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    KeyValues file_keys;
    if (!args.config_path.empty()) file_keys = read_config_file(args.config_path);

    if (app.got_subcommand(reproduce)) {
      // reproduce is preset-driven; the figure picks the default base, which
      // any explicit key still overrides.
      KeyValues defaults{{"run.preset", fig == "fig3" ? "WEAK" : "S1_rho5.5"},
                         {"run.fig", fig}};
      file_keys.insert(file_keys.begin(), defaults.begin(), defaults.end());
    }

    KeyValues overrides;
    for (const auto& kv : parse_overrides(args.sets)) overrides.push_back(kv);
    if (validate->count("--seed") || reproduce->count("--seed")) {
      overrides.emplace_back("run.seed", std::to_string(args.seed));
    }
    if (validate->count("--trials") || reproduce->count("--trials")) {
      overrides.emplace_back("run.trials", std::to_string(args.trials));
    }
    if (validate->count("--tolerance") || reproduce->count("--tolerance")) {
      overrides.emplace_back("run.tolerance", std::to_string(args.tolerance));
    }

    RunConfig cfg = build_config(file_keys, overrides);
    cfg.command = app.get_subcommands().front()->get_name();
    if (!args.out_path.empty()) cfg.out_path = args.out_path;

    const CommandResult result = run_command(cfg);
    return emit_result(result, cfg.out_path);
  } catch (const ParseError& err) {
    std::cerr << "parse error: " << err.what() << "\n";
    return kExitParse;
  } catch (const ValidationError& err) {
    std::cerr << "validation error: " << err.what() << "\n";
    return kExitValidation;
  } catch (const ckpt::ModelError& err) {
    std::cerr << "model-invalid scenario: " << err.what() << "\n";
    return kExitModelInvalid;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
}
