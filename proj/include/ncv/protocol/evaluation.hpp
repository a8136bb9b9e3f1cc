#pragma once

#include "ncv/calibration/platt.hpp"
#include "ncv/core/ledger.hpp"
#include "ncv/learners/model_spec.hpp"
#include "ncv/metrics/summary.hpp"
#include "ncv/protocol/config.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ncv::protocol {

struct MetricSet {
  double ba = 0.0;
  double auc_roc = 0.0;
  double auprc = 0.0;
  double brier = 0.0;
  double ece = 0.0;
};

inline constexpr std::array<std::string_view, 5> kMetricNames{"ba", "auc_roc", "auprc", "brier",
                                                             "ece"};
double metric_value(const MetricSet& m, std::string_view name);

// One outer fold (or one hold-out repeat).
struct FoldResult {
  int fold_id = 0;
  learn::HyperParams chosen_hyperparams;
  std::optional<double> inner_ap;                     // when a grid was searched
  std::optional<calib::SigmoidCalibrator> calibrator;  // nested with calibration
  double t_star = 0.5;
  MetricSet test_metrics;
  std::optional<std::vector<double>> importances;
  bool converged = true;
  std::size_t n_train = 0;
  // Outer-test rows (dataset order) with their raw and reported scores.
  std::vector<std::size_t> test_rows;
  std::vector<int> test_labels;
  std::vector<double> test_scores;         // model output
  std::vector<double> test_probabilities;  // after calibration, if any
};

struct RankedImportance {
  std::string feature;
  double importance = 0.0;
};

struct LedgerSummary {
  std::size_t entries = 0;
  std::map<std::string, std::size_t> rows_by_stage;
};

struct EvaluationReport {
  Strategy strategy = Strategy::nested_calibrated;
  ProtocolConfig config;
  std::vector<std::string> feature_names;
  std::vector<FoldResult> folds;
  // Aggregates over folds; sd/iqr absent with a single fold.
  std::map<std::string, metrics::RepeatSummary> metrics;
  metrics::RepeatSummary thresholds;
  // AUC of pooled out-of-fold scores, before and after calibration.
  double pooled_auc_raw = 0.0;
  double pooled_auc_calibrated = 0.0;
  data::LedgerVerdict verdict;
  LedgerSummary ledger;
  std::vector<RankedImportance> importances;
  std::vector<std::string> warnings;
};

// Recomputes metrics, thresholds, pooled AUCs and importances from folds.
void finalize_aggregates(EvaluationReport& report);

struct FoldImportances {
  std::vector<std::string> feature_names;
  std::vector<double> values;
};

// Mean across folds, renormalized to sum 1, sorted descending (ties by
// name). Throws ProtocolError when feature names differ between folds.
std::vector<RankedImportance> aggregate_importances(const std::vector<FoldImportances>& folds);

}  // namespace ncv::protocol
