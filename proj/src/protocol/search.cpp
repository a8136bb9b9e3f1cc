#include "ncv/protocol/search.hpp"

#include "ncv/core/error.hpp"
#include "ncv/core/folds.hpp"
#include "ncv/core/seed.hpp"
#include "ncv/learners/model.hpp"
#include "ncv/metrics/metrics.hpp"

namespace ncv::protocol {

GridSearchResult inner_grid_search(const data::SampleView& train, const learn::ModelSpec& spec,
                                   const learn::HyperParamGrid& grid, int inner_k,
                                   std::uint64_t seed) {
  if (grid.empty()) throw ConfigError("inner_grid_search: empty grid");
  const std::vector<int> labels = train.labels();
  const auto plan = data::stratified_kfold(labels, inner_k, derive_seed(seed, "inner_folds"));
  data::require_feasible(plan, "inner_grid_search");

  std::vector<data::SampleView> fit_views, score_views;
  std::vector<std::vector<int>> score_labels;
  for (const auto& fold : plan.folds) {
    fit_views.push_back(train.subset(fold.train));
    score_views.push_back(train.subset(fold.test));
    score_labels.push_back(score_views.back().labels());
  }

  GridSearchResult result;
  bool any = false;
  for (const auto& params : grid.enumerate()) {
    CandidateScore cand{params, std::nullopt, {}};
    try {
      double sum = 0.0;
      for (std::size_t j = 0; j < plan.folds.size(); ++j) {
        const auto s = spec.with_params(params).with_seed(
            derive_seed(seed, "inner_fit", static_cast<std::int64_t>(j)));
        const auto model = learn::fit_model(fit_views[j], s);
        sum += metrics::average_precision(score_labels[j], learn::predict_scores(model, score_views[j]));
      }
      cand.mean_ap = sum / static_cast<double>(plan.folds.size());
    } catch (const FitError& e) {
      cand.error = e.what();
    }
    if (cand.mean_ap && (!any || *cand.mean_ap > result.best_ap)) {
      any = true;
      result.best_ap = *cand.mean_ap;
      result.chosen_index = result.candidates.size();
    }
    result.candidates.push_back(std::move(cand));
  }
  if (!any) {
    throw ProtocolError("inner_grid_search: every candidate failed to fit (first error: " +
                        result.candidates.front().error + ")");
  }
  result.chosen = spec.with_params(result.candidates[result.chosen_index].params).hyperparams;
  return result;
}

}  // namespace ncv::protocol
