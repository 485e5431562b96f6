#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oolr/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Online reservation learning: trace generation, experiment runs, "
               "plot-ready report aggregation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string out_dir;
  std::string trace_path;
  std::vector<std::string> report_files;
  std::uint64_t seed = 0;
  bool seed_set = false;

  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Override the config trace seed")
        ->each([&](const std::string&) { seed_set = true; });
  };

  auto* generate = app.add_subcommand("generate", "Generate a trace CSV from a config");
  generate->add_option("--config", config_path, "Config file")->required();
  generate->add_option("--out", out_path, "Output trace CSV")->required();
  add_seed(generate);

  auto* run = app.add_subcommand(
      "run", "Run every configured learner/predictor combination on one trace");
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--trace", trace_path, "Trace CSV (default: generate from config)");
  run->add_option("--out-dir", out_dir, "Directory for report CSVs")->required();
  add_seed(run);

  auto* report = app.add_subcommand(
      "report", "Join average-regret columns of report CSVs into one wide CSV");
  report->add_option("--out", out_path, "Output summary CSV")->required();
  report->add_option("files", report_files, "Report CSVs")->required();

  CLI11_PARSE(app, argc, argv);

  const std::optional<std::uint64_t> seed_override =
      seed_set ? std::optional<std::uint64_t>(seed) : std::nullopt;

  if (generate->parsed()) {
    return oolr::cli_generate(config_path, out_path, seed_override, std::cout,
                              std::cerr);
  }
  if (run->parsed()) {
    const std::optional<std::string> trace =
        trace_path.empty() ? std::nullopt : std::optional<std::string>(trace_path);
    return oolr::cli_run(config_path, trace, out_dir, seed_override, std::cout,
                         std::cerr);
  }
  return oolr::cli_report(report_files, out_path, std::cout, std::cerr);
}
