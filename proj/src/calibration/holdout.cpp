#include "ncv/calibration/holdout.hpp"

#include "ncv/core/error.hpp"
#include "ncv/core/folds.hpp"
#include "ncv/core/seed.hpp"
#include "ncv/learners/model.hpp"

namespace ncv::calib {

HeldOutScores holdout_scores(const data::SampleView& train, const learn::ModelSpec& spec,
                             int inner_k, std::uint64_t seed) {
  HeldOutScores out;
  out.labels = train.labels();
  const auto plan = data::stratified_kfold(out.labels, inner_k, derive_seed(seed, "holdout_folds"));
  out.scores.assign(out.labels.size(), 0.0);
  for (std::size_t j = 0; j < plan.folds.size(); ++j) {
    const auto& fold = plan.folds[j];
    std::size_t pos = 0;
    for (std::size_t r : fold.train) pos += static_cast<std::size_t>(out.labels[r] == 1);
    if (pos == 0 || pos == fold.train.size()) {
      throw DataError("holdout_scores: inner fold " + std::to_string(j) +
                      " leaves a single class for fitting (class too small for inner_k=" +
                      std::to_string(inner_k) + ")");
    }
    const auto model = learn::fit_model(
        train.subset(fold.train),
        spec.with_seed(derive_seed(seed, "holdout_fit", static_cast<std::int64_t>(j))));
    const auto s = learn::predict_scores(model, train.subset(fold.test));
    for (std::size_t t = 0; t < fold.test.size(); ++t) out.scores[fold.test[t]] = s[t];
  }
  return out;
}

}  // namespace ncv::calib
