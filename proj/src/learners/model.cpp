#include "ncv/learners/model.hpp"

#include "ncv/core/error.hpp"
#include "ncv/core/seed.hpp"

#include <algorithm>
#include <cmath>

namespace ncv::learn {

namespace {

void require_kind(const ModelSpec& spec, ModelKind expected, const char* op) {
  if (spec.kind != expected) {
    throw ConfigError(std::string(op) + ": spec kind is " + std::string(to_string(spec.kind)));
  }
}

struct Prepared {
  Eigen::MatrixXd x;
  std::vector<int> y;
  std::vector<double> w;
  HyperParams params;
};

Prepared prepare(const data::SampleView& train, const ModelSpec& spec, const char* op) {
  Prepared p;
  p.params = resolved_hyperparams(spec.kind, spec.hyperparams);
  p.y = train.labels();
  data::require_both_classes(p.y, op);
  p.x = train.matrix();
  p.w = sample_weights(p.y, spec.class_weighting);
  return p;
}

TrainedModel wrap(const data::SampleView& train, const ModelSpec& spec, ModelState state) {
  TrainedModel m;
  m.spec = spec;
  m.feature_names = train.feature_names();
  m.state = std::move(state);
  return m;
}

}  // namespace

std::vector<double> sample_weights(std::span<const int> labels, ClassWeighting weighting) {
  std::vector<double> w(labels.size(), 1.0);
  if (weighting == ClassWeighting::none) return w;
  double count[2] = {0.0, 0.0};
  for (int y : labels) count[y == 1 ? 1 : 0] += 1.0;
  const double n = static_cast<double>(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double c = count[labels[i] == 1 ? 1 : 0];
    w[i] = n / (2.0 * c);
  }
  return w;
}

TrainedModel fit_tree(const data::SampleView& train, const ModelSpec& spec) {
  require_kind(spec, ModelKind::decision_tree, "fit_tree");
  const TreeParams params = tree_params(spec);
  auto p = prepare(train, spec, "fit_tree");
  // Seeded as tree 0 of a forest so a one-tree forest reproduces it.
  GrownTree grown = grow_tree(p.x, p.y, p.w, params, SplitMode::exhaustive,
                              derive_seed(spec.seed, "tree", 0));
  TrainedModel m = wrap(train, spec, TreeModel{std::move(grown.tree)});
  m.importances = normalize_importance(std::move(grown.importance));
  return m;
}

TrainedModel fit_logistic_regression(const data::SampleView& train, const ModelSpec& spec) {
  require_kind(spec, ModelKind::logistic_regression, "fit_logistic_regression");
  auto p = prepare(train, spec, "fit_logistic_regression");
  LogisticModel state = fit_logistic_state(p.x, p.y, p.w, param_as_real(p.params, "C"),
                                           static_cast<int>(param_as_int(p.params, "max_iter")));
  const bool converged = state.converged;
  TrainedModel m = wrap(train, spec, std::move(state));
  m.converged = converged;
  return m;
}

TrainedModel fit_gaussian_nb(const data::SampleView& train, const ModelSpec& spec) {
  require_kind(spec, ModelKind::gaussian_nb, "fit_gaussian_nb");
  auto p = prepare(train, spec, "fit_gaussian_nb");
  return wrap(train, spec,
              fit_gaussian_nb_state(p.x, p.y, p.w, param_as_real(p.params, "var_smoothing")));
}

TrainedModel fit_knn(const data::SampleView& train, const ModelSpec& spec) {
  require_kind(spec, ModelKind::knn, "fit_knn");
  const auto params = resolved_hyperparams(spec.kind, spec.hyperparams);
  const auto k = param_as_int(params, "n_neighbors");
  if (k < 1) throw FitError("fit_knn: n_neighbors must be at least 1");
  const std::vector<int> y = train.labels();
  return wrap(train, spec,
              fit_knn_state(train.matrix(), y, sample_weights(y, spec.class_weighting),
                            static_cast<int>(k)));
}

TrainedModel fit_lda(const data::SampleView& train, const ModelSpec& spec) {
  require_kind(spec, ModelKind::lda, "fit_lda");
  auto p = prepare(train, spec, "fit_lda");
  return wrap(train, spec, fit_lda_state(p.x, p.y, p.w, param_as_real(p.params, "ridge")));
}

TrainedModel fit_model(const data::SampleView& train, const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::decision_tree: return fit_tree(train, spec);
    case ModelKind::random_forest:
    case ModelKind::extra_trees: return fit_forest(train, spec);
    case ModelKind::logistic_regression: return fit_logistic_regression(train, spec);
    case ModelKind::gaussian_nb: return fit_gaussian_nb(train, spec);
    case ModelKind::knn: return fit_knn(train, spec);
    case ModelKind::lda: return fit_lda(train, spec);
  }
  throw ConfigError("fit_model: unknown model kind");
}

std::vector<double> predict_scores(const TrainedModel& model,
                                   const std::vector<std::string>& feature_names,
                                   const Eigen::MatrixXd& x) {
  if (feature_names != model.feature_names) {
    throw DataError("predict_scores: feature columns differ from the training columns");
  }
  std::vector<double> s = std::visit([&](const auto& state) { return state.score(x); }, model.state);
  for (double& v : s) {
    if (!std::isfinite(v)) throw FitError("predict_scores: non-finite score");
    v = std::clamp(v, 0.0, 1.0);
  }
  return s;
}

std::vector<double> predict_scores(const TrainedModel& model, const data::SampleView& rows) {
  return predict_scores(model, rows.feature_names(), rows.matrix());
}

}  // namespace ncv::learn
