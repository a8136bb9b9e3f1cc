#pragma once

#include "ncv/learners/model_spec.hpp"
#include "ncv/protocol/evaluation.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ncv::report {

// One (feature set, model, strategy) evaluation.
struct RunRecord {
  std::string feature_set;
  learn::ModelKind model = learn::ModelKind::random_forest;
  protocol::EvaluationReport report;
};

// "Random Forest", "Extra Trees", ...
std::string_view display_name(learn::ModelKind kind);

// Fixed-point rendering; rounding happens only here.
std::string fixed(double v, int decimals);
// "0.660 ± 0.068"; the spread is omitted when absent.
std::string mean_sd(double mean, const std::optional<double>& sd, int decimals = 3);

// Quotes a CSV cell when needed.
std::string csv_cell(std::string_view s);

// Model x feature set: BA (mean ± SD, 3 decimals) and median threshold (2
// decimals) per feature set, from runs of `strategy`.
std::string model_table_csv(const std::vector<RunRecord>& runs,
                            const std::vector<std::string>& feature_sets,
                            protocol::Strategy strategy);

// Strategies x (model, feature set) BA, plus a naive-minus-nested gap row
// when both strategies are present.
std::string strategy_matrix_csv(const std::vector<RunRecord>& runs,
                                const std::vector<std::string>& feature_sets,
                                const std::vector<protocol::Strategy>& strategies);

// Mean importances, descending, 3 decimals.
std::string importance_csv(const protocol::EvaluationReport& report);

// Per-fold threshold and BA (2 decimals) with a "Median ± IQR" row.
std::string fold_table_csv(const protocol::EvaluationReport& report);

// Pooled out-of-fold ROC points and reliability bins.
std::string roc_csv(const protocol::EvaluationReport& report);
std::string reliability_csv(const protocol::EvaluationReport& report);

// Lowercase, alphanumerics kept, everything else collapsed to '_'.
std::string slug(std::string_view s);

}  // namespace ncv::report
