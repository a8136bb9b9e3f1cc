#include "ncv/report/experiment.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

// NCV_WORKERS sets the default worker count; --workers overrides it.
int default_workers() {
  const char* env = std::getenv("NCV_WORKERS");
  if (env == nullptr || *env == '\0') return 1;
  try {
    std::size_t pos = 0;
    const int n = std::stoi(env, &pos);
    if (pos == std::string(env).size() && n >= 1) return n;
  } catch (const std::exception&) {
  }
  throw ncv::ConfigError(std::string("NCV_WORKERS must be a positive integer, got '") + env + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leakage-controlled nested cross-validation"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Evaluate the models described by a JSON config");
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<int> workers;
  bool verify = false;
  run->add_option("config", config_path, "Run configuration (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory (overrides output_dir)");
  run->add_option("--workers", workers, "Outer-fold worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--verify-ledger", verify, "Write and re-audit every access ledger");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const auto config = ncv::report::parse_config(config_path);
    ncv::report::ExperimentOptions options;
    options.workers = workers ? *workers : default_workers();
    options.verify_ledger = verify;
    const auto result = ncv::report::run_experiment(config, options);
    const std::filesystem::path dir = out_dir ? std::filesystem::path(*out_dir) : config.output_dir;
    ncv::report::write_outputs(dir, result.files);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    for (const auto& r : result.runs) {
      std::cout << r.feature_set << '\t' << ncv::report::display_name(r.model) << '\t'
                << ncv::protocol::display_name(r.report.strategy) << "\tBA "
                << ncv::report::mean_sd(r.report.metrics.at("ba").mean, r.report.metrics.at("ba").sd)
                << '\t' << (r.report.verdict.clean ? "clean" : "leaky") << '\n';
    }
    std::cout << "wrote " << result.files.size() << " files to " << dir.string() << '\n';
    if (result.exit_code() == 2) std::cerr << "error: nested ledger violation detected\n";
    return result.exit_code();
  } catch (const ncv::report::StageError& e) {
    std::cerr << "error [" << e.stage() << "]: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
