#include "ncv/protocol/strategies.hpp"

#include "ncv/calibration/holdout.hpp"
#include "ncv/calibration/platt.hpp"
#include "ncv/core/error.hpp"
#include "ncv/core/parallel.hpp"
#include "ncv/core/seed.hpp"
#include "ncv/core/view.hpp"
#include "ncv/learners/model.hpp"
#include "ncv/metrics/metrics.hpp"
#include "ncv/protocol/search.hpp"

#include <numeric>

namespace ncv::protocol {

namespace {

using data::Stage;

MetricSet compute_metrics(const std::vector<int>& labels, const std::vector<double>& probs,
                          double threshold, int ece_bins) {
  MetricSet m;
  m.ba = metrics::evaluate_threshold(labels, probs, threshold).balanced_accuracy;
  m.auc_roc = metrics::roc_auc(labels, probs);
  m.auprc = metrics::average_precision(labels, probs);
  m.brier = metrics::brier_score(labels, probs);
  m.ece = metrics::expected_calibration_error(labels, probs, ece_bins);
  return m;
}

LedgerSummary summarize_ledger(const data::AccessLedger& ledger) {
  LedgerSummary s;
  for (const auto& e : ledger.entries()) {
    ++s.entries;
    s.rows_by_stage[std::string(data::to_string(e.stage))] += e.indices.size();
  }
  return s;
}

std::vector<std::size_t> all_rows(std::size_t n) {
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return rows;
}

template <class Fn>
void run_folds(std::size_t count, int workers, const char* unit, Fn&& fn) {
  parallel_for(count, workers, [&](std::size_t f) {
    try {
      fn(f);
    } catch (const Error& e) {
      throw ProtocolError(std::string(unit) + " " + std::to_string(f) + ": " + e.what());
    }
  });
}

EvaluationReport start_report(const data::Dataset& data, const ProtocolConfig& config) {
  config.validate();
  EvaluationReport r;
  r.strategy = config.strategy;
  r.config = config;
  r.feature_names = data.feature_names();
  return r;
}

void finish_report(EvaluationReport& r, const data::AccessLedger& ledger,
                   const std::vector<data::Fold>& folds) {
  for (const auto& f : r.folds) {
    if (!f.converged) {
      r.warnings.push_back("fold " + std::to_string(f.fold_id) + ": model fit did not converge");
    }
  }
  r.verdict = data::ledger_assert_clean(ledger.entries(), folds);
  r.ledger = summarize_ledger(ledger);
  finalize_aggregates(r);
}

FoldResult nested_fold(const data::AuditedData& audited, const ProtocolConfig& config,
                       const data::Fold& fold, int fid, const std::vector<double>& thresholds) {
  FoldResult r;
  r.fold_id = fid;
  r.n_train = fold.train.size();

  // (1) hyperparameters from the inner loop only
  learn::ModelSpec spec = config.model;
  if (!config.grid.empty()) {
    const auto view = audited.view(Stage::tuning, fid, fold.train);
    const auto gs = inner_grid_search(view, config.model, config.grid, config.inner_k,
                                      derive_seed(config.seed, "inner", fid));
    spec.hyperparams = gs.chosen;
    r.inner_ap = gs.best_ap;
  }
  r.chosen_hyperparams = learn::resolved_hyperparams(spec.kind, spec.hyperparams);

  // (2) calibrator on held-out outer-train scores
  const auto cal_view = audited.view(Stage::calibration, fid, fold.train);
  const auto held = calib::holdout_scores(cal_view, spec, config.inner_k,
                                          derive_seed(config.seed, "calibration", fid));
  std::vector<double> held_probs = held.scores;
  if (config.calibrate) {
    r.calibrator = calib::fit_platt(held.scores, held.labels);
    held_probs = calib::apply_calibrator(*r.calibrator, held.scores);
  }

  // (3) final model on the whole outer-train split
  const auto fit_view = audited.view(Stage::final_fit, fid, fold.train);
  const auto model = learn::fit_model(fit_view, spec.with_seed(derive_seed(config.seed, "fit", fid, 0)));
  r.importances = model.importances;
  r.converged = model.converged;

  // (4) threshold fixed before any outer-test row is read
  audited.view(Stage::threshold_search, fid, fold.train);
  r.t_star = metrics::sweep_threshold(held.labels, held_probs, thresholds).t_star;

  // (5) outer-test scoring
  const auto test_view = audited.view(Stage::outer_test_score, fid, fold.test);
  r.test_rows = fold.test;
  r.test_labels = test_view.labels();
  r.test_scores = learn::predict_scores(model, test_view);
  r.test_probabilities =
      r.calibrator ? calib::apply_calibrator(*r.calibrator, r.test_scores) : r.test_scores;
  r.test_metrics = compute_metrics(r.test_labels, r.test_probabilities, r.t_star, config.ece_bins);
  return r;
}

}  // namespace

data::FoldPlan outer_plan(const std::vector<int>& labels, const ProtocolConfig& config) {
  auto plan = data::stratified_kfold(labels, config.outer_k, derive_seed(config.seed, "outer"));
  data::require_feasible(plan, "outer fold plan");
  return plan;
}

EvaluationReport run_nested_cv(const data::Dataset& data, const ProtocolConfig& config,
                               data::AccessLedger& ledger, int workers) {
  if (config.strategy != Strategy::nested_calibrated) {
    throw ConfigError("run_nested_cv: strategy must be nested_calibrated");
  }
  EvaluationReport report = start_report(data, config);
  const auto plan = outer_plan(data.labels(), config);
  report.warnings = plan.warnings;
  const data::AuditedData audited(data, ledger);
  const auto thresholds = config.thresholds();

  report.folds.resize(plan.folds.size());
  run_folds(plan.folds.size(), workers, "outer fold", [&](std::size_t f) {
    report.folds[f] = nested_fold(audited, config, plan.folds[f], static_cast<int>(f), thresholds);
  });
  finish_report(report, ledger, plan.folds);
  return report;
}

EvaluationReport run_naive_cv(const data::Dataset& data, const ProtocolConfig& config,
                              data::AccessLedger& ledger, int workers) {
  if (config.strategy != Strategy::naive_cv && config.strategy != Strategy::naive_cv_grid) {
    throw ConfigError("run_naive_cv: strategy must be naive_cv or naive_cv_grid");
  }
  EvaluationReport report = start_report(data, config);
  const auto plan = outer_plan(data.labels(), config);
  report.warnings = plan.warnings;
  const data::AuditedData audited(data, ledger);
  const auto thresholds = config.thresholds();
  const bool grid = config.strategy == Strategy::naive_cv_grid && !config.grid.empty();
  const std::vector<learn::HyperParams> candidates =
      grid ? config.grid.enumerate() : std::vector<learn::HyperParams>{learn::HyperParams{}};
  const std::size_t k = plan.folds.size();
  const std::size_t n = data.n_samples();

  struct Unit {
    std::vector<double> scores;
    std::optional<std::vector<double>> importances;
    bool converged = true;
  };
  std::vector<std::vector<Unit>> units(candidates.size(), std::vector<Unit>(k));

  run_folds(k, workers, "fold", [&](std::size_t f) {
    const auto& fold = plan.folds[f];
    const int fid = static_cast<int>(f);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const int cid = grid ? static_cast<int>(c) : -1;
      const Stage fit_stage = grid ? Stage::tuning : Stage::final_fit;
      const Stage score_stage = grid ? Stage::tuning : Stage::outer_test_score;
      const auto spec = config.model.with_params(candidates[c])
                            .with_seed(derive_seed(config.seed, "fit", fid, 0));
      const auto model = learn::fit_model(audited.view(fit_stage, fid, fold.train, cid), spec);
      auto& u = units[c][f];
      u.scores = learn::predict_scores(model, audited.view(score_stage, fid, fold.test, cid));
      u.importances = model.importances;
      u.converged = model.converged;
    }
  });

  // Pool out-of-fold scores per candidate and pick the best one by its
  // best-threshold BA on those same predictions.
  const auto& labels = data.labels();
  std::size_t best = 0;
  double best_ba = -1.0, best_t = 0.5;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    std::vector<double> pooled(n, 0.0);
    for (std::size_t f = 0; f < k; ++f) {
      const auto& test = plan.folds[f].test;
      for (std::size_t i = 0; i < test.size(); ++i) pooled[test[i]] = units[c][f].scores[i];
    }
    const auto sweep = metrics::sweep_threshold(labels, pooled, thresholds);
    if (sweep.outcome.balanced_accuracy > best_ba) {
      best_ba = sweep.outcome.balanced_accuracy;
      best_t = sweep.t_star;
      best = c;
    }
  }

  const auto rows = all_rows(n);
  for (std::size_t f = 0; f < k; ++f) {
    const int fid = static_cast<int>(f);
    if (grid) {
      // The selection predictions are reported as the final ones.
      audited.view(Stage::final_fit, fid, plan.folds[f].train);
      audited.view(Stage::outer_test_score, fid, plan.folds[f].test);
    }
    audited.view(Stage::threshold_search, fid, rows);
  }

  const auto chosen = config.model.with_params(candidates[best]);
  report.folds.resize(k);
  for (std::size_t f = 0; f < k; ++f) {
    auto& r = report.folds[f];
    const auto& u = units[best][f];
    r.fold_id = static_cast<int>(f);
    r.chosen_hyperparams = learn::resolved_hyperparams(chosen.kind, chosen.hyperparams);
    r.n_train = plan.folds[f].train.size();
    r.t_star = best_t;
    r.importances = u.importances;
    r.converged = u.converged;
    r.test_rows = plan.folds[f].test;
    for (std::size_t i : r.test_rows) r.test_labels.push_back(labels[i]);
    r.test_scores = u.scores;
    r.test_probabilities = u.scores;
    r.test_metrics = compute_metrics(r.test_labels, r.test_probabilities, r.t_star, config.ece_bins);
  }
  finish_report(report, ledger, plan.folds);
  return report;
}

EvaluationReport run_holdout(const data::Dataset& data, const ProtocolConfig& config,
                             data::AccessLedger& ledger, int workers) {
  if (config.strategy != Strategy::holdout && config.strategy != Strategy::holdout_grid) {
    throw ConfigError("run_holdout: strategy must be holdout or holdout_grid");
  }
  EvaluationReport report = start_report(data, config);
  const data::AuditedData audited(data, ledger);
  const auto reps = static_cast<std::size_t>(config.repeats);
  const bool grid = config.strategy == Strategy::holdout_grid && !config.grid.empty();

  std::vector<data::Fold> splits(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    splits[r] = data::stratified_split(data.labels(), config.test_fraction,
                                       derive_seed(config.seed, "holdout", static_cast<std::int64_t>(r)));
  }
  report.folds.resize(reps);
  run_folds(reps, workers, "repeat", [&](std::size_t rep) {
    const auto& split = splits[rep];
    const int fid = static_cast<int>(rep);
    FoldResult r;
    r.fold_id = fid;
    r.n_train = split.train.size();
    learn::ModelSpec spec = config.model;
    if (grid) {
      const auto gs = inner_grid_search(audited.view(Stage::tuning, fid, split.train), config.model,
                                        config.grid, config.inner_k,
                                        derive_seed(config.seed, "inner", fid));
      spec.hyperparams = gs.chosen;
      r.inner_ap = gs.best_ap;
    }
    r.chosen_hyperparams = learn::resolved_hyperparams(spec.kind, spec.hyperparams);
    const auto model = learn::fit_model(audited.view(Stage::final_fit, fid, split.train),
                                        spec.with_seed(derive_seed(config.seed, "fit", fid, 0)));
    r.importances = model.importances;
    r.converged = model.converged;
    r.t_star = config.fixed_threshold;
    const auto test_view = audited.view(Stage::outer_test_score, fid, split.test);
    r.test_rows = split.test;
    r.test_labels = test_view.labels();
    r.test_scores = learn::predict_scores(model, test_view);
    r.test_probabilities = r.test_scores;
    r.test_metrics = compute_metrics(r.test_labels, r.test_probabilities, r.t_star, config.ece_bins);
    report.folds[rep] = std::move(r);
  });
  finish_report(report, ledger, splits);
  return report;
}

EvaluationReport run_nested_cv(const data::Dataset& data, const ProtocolConfig& config, int workers) {
  data::AccessLedger ledger;
  return run_nested_cv(data, config, ledger, workers);
}

EvaluationReport run_naive_cv(const data::Dataset& data, const ProtocolConfig& config, int workers) {
  data::AccessLedger ledger;
  return run_naive_cv(data, config, ledger, workers);
}

EvaluationReport run_holdout(const data::Dataset& data, const ProtocolConfig& config, int workers) {
  data::AccessLedger ledger;
  return run_holdout(data, config, ledger, workers);
}

EvaluationReport run_strategy(const data::Dataset& data, const ProtocolConfig& config, int workers) {
  switch (config.strategy) {
    case Strategy::nested_calibrated: return run_nested_cv(data, config, workers);
    case Strategy::naive_cv:
    case Strategy::naive_cv_grid: return run_naive_cv(data, config, workers);
    case Strategy::holdout:
    case Strategy::holdout_grid: return run_holdout(data, config, workers);
  }
  throw ConfigError("run_strategy: unknown strategy");
}

}  // namespace ncv::protocol
