#pragma once

#include "ncv/core/view.hpp"
#include "ncv/learners/knn.hpp"
#include "ncv/learners/lda.hpp"
#include "ncv/learners/logistic.hpp"
#include "ncv/learners/model_spec.hpp"
#include "ncv/learners/naive_bayes.hpp"
#include "ncv/learners/tree.hpp"

#include <Eigen/Core>

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ncv::learn {

using ModelState =
    std::variant<TreeModel, ForestModel, LogisticModel, GaussianNbModel, KnnModel, LdaModel>;

// Immutable once fitted; safe to share across threads.
struct TrainedModel {
  ModelSpec spec;
  ModelState state;
  std::vector<std::string> feature_names;
  std::optional<std::vector<double>> importances;  // tree family only
  bool converged = true;
};

// inverse_frequency: n / (2 n_c) per row of class c; none: all ones.
std::vector<double> sample_weights(std::span<const int> labels, ClassWeighting weighting);

// Each throws FitError on single-class input and ConfigError on a spec of
// the wrong kind or with invalid hyperparameters.
TrainedModel fit_tree(const data::SampleView& train, const ModelSpec& spec);
TrainedModel fit_forest(const data::SampleView& train, const ModelSpec& spec);
TrainedModel fit_logistic_regression(const data::SampleView& train, const ModelSpec& spec);
TrainedModel fit_gaussian_nb(const data::SampleView& train, const ModelSpec& spec);
TrainedModel fit_knn(const data::SampleView& train, const ModelSpec& spec);
TrainedModel fit_lda(const data::SampleView& train, const ModelSpec& spec);

// Dispatches on spec.kind.
TrainedModel fit_model(const data::SampleView& train, const ModelSpec& spec);

// Throws DataError when the view's columns differ from the training columns.
std::vector<double> predict_scores(const TrainedModel& model, const data::SampleView& rows);
std::vector<double> predict_scores(const TrainedModel& model,
                                   const std::vector<std::string>& feature_names,
                                   const Eigen::MatrixXd& x);

}  // namespace ncv::learn
