#include "ncv/core/error.hpp"
#include "ncv/core/seed.hpp"
#include "ncv/learners/model.hpp"

#include <random>

namespace ncv::learn {

TrainedModel fit_forest(const data::SampleView& train, const ModelSpec& spec) {
  if (spec.kind != ModelKind::random_forest && spec.kind != ModelKind::extra_trees) {
    throw ConfigError("fit_forest: spec kind is " + std::string(to_string(spec.kind)));
  }
  const TreeParams params = tree_params(spec);
  if (params.n_estimators < 1) throw ConfigError("fit_forest: n_estimators must be at least 1");
  const std::vector<int> y = train.labels();
  data::require_both_classes(y, "fit_forest");
  const Eigen::MatrixXd x = train.matrix();
  const std::vector<double> base = sample_weights(y, spec.class_weighting);
  const SplitMode mode =
      spec.kind == ModelKind::extra_trees ? SplitMode::randomized : SplitMode::exhaustive;

  const std::size_t n = y.size();
  const auto p = static_cast<std::size_t>(x.cols());
  ForestModel forest;
  std::vector<double> importance(p, 0.0);
  std::vector<double> w(n);
  for (int t = 0; t < params.n_estimators; ++t) {
    if (params.bootstrap) {
      std::vector<double> counts(n, 0.0);
      std::mt19937_64 rng(derive_seed(spec.seed, "bootstrap", t));
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (std::size_t i = 0; i < n; ++i) counts[pick(rng)] += 1.0;
      for (std::size_t i = 0; i < n; ++i) w[i] = counts[i] * base[i];
    } else {
      w = base;
    }
    GrownTree grown = grow_tree(x, y, w, params, mode, derive_seed(spec.seed, "tree", t));
    if (auto imp = normalize_importance(std::move(grown.importance))) {
      for (std::size_t j = 0; j < p; ++j) importance[j] += (*imp)[j];
    }
    forest.trees.push_back(std::move(grown.tree));
  }

  TrainedModel model;
  model.spec = spec;
  model.feature_names = train.feature_names();
  model.importances = normalize_importance(std::move(importance));
  model.state = std::move(forest);
  return model;
}

}  // namespace ncv::learn
