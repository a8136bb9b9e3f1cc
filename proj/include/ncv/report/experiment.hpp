#pragma once

#include "ncv/core/error.hpp"
#include "ncv/report/run_config.hpp"
#include "ncv/report/tables.hpp"

#include "json.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace ncv::report {

// Error tagged with the pipeline stage it came from: ingest, features,
// protocol or report.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& message)
      : Error(stage + ": " + message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct ExperimentOptions {
  int workers = 1;
  // Record every run's ledger, re-audit it and write it out.
  bool verify_ledger = false;
};

struct ExperimentResult {
  std::vector<RunRecord> runs;
  nlohmann::json report;
  // File name -> contents, everything that write_outputs puts on disk.
  std::map<std::string, std::string> files;
  // True when every nested run's ledger is clean.
  bool ledger_clean = true;
  std::vector<std::string> warnings;

  // 0 clean, 2 nested ledger violation.
  int exit_code() const { return ledger_clean ? 0 : 2; }
};

// Runs every feature set x model x strategy. Nothing is written.
ExperimentResult run_experiment(const RunConfig& config, const ExperimentOptions& options = {});

// Writes all files into `dir` (created if needed). Each file goes to a
// temporary name first; on any failure the files written so far are removed.
void write_outputs(const std::filesystem::path& dir,
                   const std::map<std::string, std::string>& files);

// Serialized report.json; byte-identical for identical inputs.
std::string dump_report(const nlohmann::json& report);

}  // namespace ncv::report
