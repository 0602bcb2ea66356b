// Command-line front end: `fidelity evaluate --config run.yaml` and
// `fidelity schema`.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "fidelity/fidelity.hpp"

namespace {

enum ExitCode : int { kOk = 0, kConfig = 1, kInput = 2, kMetric = 3 };

int run_evaluate(const std::string& config_path, std::optional<std::uint64_t> seed, bool no_structural) {
  try {
    std::string yaml;
    try {
      yaml = fidelity::read_file_bytes(config_path);
    } catch (const fidelity::IngestError& e) {
      throw fidelity::ConfigError("--config", e.what());
    }
    auto cfg = fidelity::parse_config(yaml);
    if (seed) cfg.seed = *seed;
    if (no_structural) cfg.enable_structural = false;
    const auto report = fidelity::run_pipeline(cfg);
    std::cout << "run_id " << report.run_id << "\n"
              << "report " << cfg.report_path.string() << "\n"
              << "plots  " << fidelity::run_plots_dir(cfg, report.run_id).string() << "\n";
    for (const auto& w : report.metadata.warnings) std::cerr << "warning: " << w << "\n";
    return kOk;
  } catch (const fidelity::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const fidelity::IngestError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const fidelity::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kInput;
  } catch (const fidelity::MetricError& e) {
    std::cerr << "metric error: " << e.what() << "\n";
    return kMetric;
  } catch (const fidelity::ReportError& e) {
    std::cerr << "report error: " << e.what() << "\n";
    return kMetric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMetric;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic tabular data fidelity evaluator"};
  app.require_subcommand(1);

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate a synthetic dataset against a real one");
  std::string config_path;
  std::optional<std::uint64_t> seed;
  bool no_structural = false;
  evaluate->add_option("--config", config_path, "YAML run configuration")->required();
  evaluate->add_option("--seed", seed, "Override the configured seed");
  evaluate->add_flag("--no-structural", no_structural, "Skip the embedding and kNN graph metrics");

  auto* schema = app.add_subcommand("schema", "Print the JSON Schema of the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  if (schema->parsed()) {
    std::cout << fidelity::kReportSchema;
    return kOk;
  }
  return run_evaluate(config_path, seed, no_structural);
}
