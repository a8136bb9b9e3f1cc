#include "ncv/report/tables.hpp"

#include "ncv/metrics/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ncv::report {

namespace {

const RunRecord* find_run(const std::vector<RunRecord>& runs, const std::string& fs,
                          learn::ModelKind model, protocol::Strategy s) {
  for (const auto& r : runs) {
    if (r.feature_set == fs && r.model == model && r.report.strategy == s) return &r;
  }
  return nullptr;
}

std::vector<learn::ModelKind> models_in_order(const std::vector<RunRecord>& runs) {
  std::vector<learn::ModelKind> out;
  for (const auto& r : runs) {
    if (std::find(out.begin(), out.end(), r.model) == out.end()) out.push_back(r.model);
  }
  return out;
}

struct Pooled {
  std::vector<int> labels;
  std::vector<double> probs;
};

Pooled pooled(const protocol::EvaluationReport& r) {
  Pooled p;
  for (const auto& f : r.folds) {
    p.labels.insert(p.labels.end(), f.test_labels.begin(), f.test_labels.end());
    p.probs.insert(p.probs.end(), f.test_probabilities.begin(), f.test_probabilities.end());
  }
  return p;
}

}  // namespace

std::string_view display_name(learn::ModelKind kind) {
  switch (kind) {
    case learn::ModelKind::decision_tree: return "Decision Tree";
    case learn::ModelKind::random_forest: return "Random Forest";
    case learn::ModelKind::extra_trees: return "Extra Trees";
    case learn::ModelKind::logistic_regression: return "Logistic Regression";
    case learn::ModelKind::gaussian_nb: return "Gaussian NB";
    case learn::ModelKind::knn: return "KNN";
    case learn::ModelKind::lda: return "LDA";
  }
  return "";
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  // Avoid "-0.000" for tiny negatives.
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string mean_sd(double mean, const std::optional<double>& sd, int decimals) {
  return sd ? fixed(mean, decimals) + " ± " + fixed(*sd, decimals) : fixed(mean, decimals);
}

std::string csv_cell(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string slug(std::string_view s) {
  std::string out;
  bool sep = false;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      if (sep && !out.empty()) out += '_';
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      sep = false;
    } else {
      sep = true;
    }
  }
  return out.empty() ? "x" : out;
}

std::string model_table_csv(const std::vector<RunRecord>& runs,
                            const std::vector<std::string>& feature_sets,
                            protocol::Strategy strategy) {
  std::ostringstream out;
  out << "Model";
  for (const auto& fs : feature_sets) {
    out << ',' << csv_cell(fs + " BA (mean ± SD)") << ',' << csv_cell(fs + " Med. thr.");
  }
  out << '\n';
  for (auto model : models_in_order(runs)) {
    out << csv_cell(display_name(model));
    for (const auto& fs : feature_sets) {
      const RunRecord* r = find_run(runs, fs, model, strategy);
      if (r == nullptr) {
        out << ",,";
        continue;
      }
      const auto& ba = r->report.metrics.at("ba");
      out << ',' << csv_cell(mean_sd(ba.mean, ba.sd)) << ',' << fixed(r->report.thresholds.median, 2);
    }
    out << '\n';
  }
  return out.str();
}

std::string strategy_matrix_csv(const std::vector<RunRecord>& runs,
                                const std::vector<std::string>& feature_sets,
                                const std::vector<protocol::Strategy>& strategies) {
  const auto models = models_in_order(runs);
  std::ostringstream out;
  out << "Evaluation strategy";
  for (auto m : models) {
    for (const auto& fs : feature_sets) {
      out << ',' << csv_cell(std::string(display_name(m)) + " (BA) " + fs);
    }
  }
  out << '\n';
  for (auto s : strategies) {
    out << csv_cell(protocol::display_name(s));
    for (auto m : models) {
      for (const auto& fs : feature_sets) {
        const RunRecord* r = find_run(runs, fs, m, s);
        out << ',';
        if (r != nullptr) {
          const auto& ba = r->report.metrics.at("ba");
          out << csv_cell(mean_sd(ba.mean, ba.sd));
        }
      }
    }
    out << '\n';
  }
  const bool gap = std::find(strategies.begin(), strategies.end(), protocol::Strategy::naive_cv_grid) !=
                       strategies.end() &&
                   std::find(strategies.begin(), strategies.end(),
                             protocol::Strategy::nested_calibrated) != strategies.end();
  if (gap) {
    out << csv_cell("Naive CV + Grid Search minus Nested CV (BA)");
    for (auto m : models) {
      for (const auto& fs : feature_sets) {
        const RunRecord* naive = find_run(runs, fs, m, protocol::Strategy::naive_cv_grid);
        const RunRecord* nested = find_run(runs, fs, m, protocol::Strategy::nested_calibrated);
        out << ',';
        if (naive && nested) {
          out << fixed(naive->report.metrics.at("ba").mean - nested->report.metrics.at("ba").mean, 3);
        }
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string importance_csv(const protocol::EvaluationReport& report) {
  std::ostringstream out;
  out << "Feature,Imp.\n";
  for (const auto& i : report.importances) out << csv_cell(i.feature) << ',' << fixed(i.importance, 3) << '\n';
  return out.str();
}

std::string fold_table_csv(const protocol::EvaluationReport& report) {
  std::ostringstream out;
  out << "Fold,Optimal Threshold,Fold BA\n";
  std::vector<double> ba;
  for (const auto& f : report.folds) {
    out << f.fold_id + 1 << ',' << fixed(f.t_star, 2) << ',' << fixed(f.test_metrics.ba, 2) << '\n';
    ba.push_back(f.test_metrics.ba);
  }
  if (report.folds.size() >= 2) {
    const auto& t = report.thresholds;
    const auto& b = report.metrics.at("ba");
    out << csv_cell("Median ± IQR") << ',' << csv_cell(fixed(t.median, 2) + " ± " + fixed(*t.iqr, 2))
        << ',' << csv_cell(fixed(b.median, 2) + " ± " + fixed(*b.iqr, 2)) << '\n';
  }
  return out.str();
}

std::string roc_csv(const protocol::EvaluationReport& report) {
  const auto p = pooled(report);
  std::ostringstream out;
  out << "threshold,fpr,tpr\n";
  for (const auto& pt : metrics::roc_curve(p.labels, p.probs)) {
    out << (std::isinf(pt.threshold) ? std::string("inf") : fixed(pt.threshold, 6)) << ','
        << fixed(pt.fpr, 6) << ',' << fixed(pt.tpr, 6) << '\n';
  }
  return out.str();
}

std::string reliability_csv(const protocol::EvaluationReport& report) {
  const auto p = pooled(report);
  std::ostringstream out;
  out << "bin_lower,bin_upper,count,mean_predicted,observed_rate\n";
  for (const auto& b : metrics::reliability_bins(p.labels, p.probs, report.config.ece_bins)) {
    out << fixed(b.lower, 2) << ',' << fixed(b.upper, 2) << ',' << b.count << ','
        << fixed(b.mean_confidence, 6) << ',' << fixed(b.positive_rate, 6) << '\n';
  }
  return out.str();
}

}  // namespace ncv::report
