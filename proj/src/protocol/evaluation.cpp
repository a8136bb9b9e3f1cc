#include "ncv/protocol/evaluation.hpp"

#include "ncv/core/error.hpp"
#include "ncv/metrics/metrics.hpp"

#include <algorithm>

namespace ncv::protocol {

double metric_value(const MetricSet& m, std::string_view name) {
  if (name == "ba") return m.ba;
  if (name == "auc_roc") return m.auc_roc;
  if (name == "auprc") return m.auprc;
  if (name == "brier") return m.brier;
  if (name == "ece") return m.ece;
  throw ConfigError("unknown metric '" + std::string(name) + "'");
}

std::vector<RankedImportance> aggregate_importances(const std::vector<FoldImportances>& folds) {
  if (folds.empty()) return {};
  const auto& names = folds.front().feature_names;
  std::vector<double> mean(names.size(), 0.0);
  for (const auto& f : folds) {
    if (f.feature_names != names || f.values.size() != names.size()) {
      throw ProtocolError("aggregate_importances: folds disagree on feature names");
    }
    for (std::size_t j = 0; j < names.size(); ++j) mean[j] += f.values[j];
  }
  double total = 0.0;
  for (double& v : mean) {
    v /= static_cast<double>(folds.size());
    total += v;
  }
  std::vector<RankedImportance> out;
  out.reserve(names.size());
  for (std::size_t j = 0; j < names.size(); ++j) {
    out.push_back({names[j], total > 0.0 ? mean[j] / total : 0.0});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.importance != b.importance) return a.importance > b.importance;
    return a.feature < b.feature;
  });
  return out;
}

void finalize_aggregates(EvaluationReport& report) {
  report.metrics.clear();
  if (report.folds.empty()) return;
  for (auto name : kMetricNames) {
    std::vector<double> v;
    for (const auto& f : report.folds) v.push_back(metric_value(f.test_metrics, name));
    report.metrics[std::string(name)] = metrics::summarize_repeats(v);
  }
  std::vector<double> t;
  for (const auto& f : report.folds) t.push_back(f.t_star);
  report.thresholds = metrics::summarize_repeats(t);

  std::vector<int> labels;
  std::vector<double> raw, cal;
  for (const auto& f : report.folds) {
    labels.insert(labels.end(), f.test_labels.begin(), f.test_labels.end());
    raw.insert(raw.end(), f.test_scores.begin(), f.test_scores.end());
    cal.insert(cal.end(), f.test_probabilities.begin(), f.test_probabilities.end());
  }
  report.pooled_auc_raw = metrics::roc_auc(labels, raw);
  report.pooled_auc_calibrated = metrics::roc_auc(labels, cal);

  std::vector<FoldImportances> imps;
  for (const auto& f : report.folds) {
    if (f.importances) imps.push_back({report.feature_names, *f.importances});
  }
  report.importances = aggregate_importances(imps);
}

}  // namespace ncv::protocol
