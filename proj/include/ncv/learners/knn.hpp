#pragma once

#include "ncv/learners/standardize.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace ncv::learn {

struct KnnModel {
  Standardizer scaler;
  Eigen::MatrixXd train;  // standardized training rows
  std::vector<int> labels;
  std::vector<double> weights;
  int k = 5;

  // Weighted fraction of positives among the k nearest training rows
  // (Euclidean, standardized space); equal distances resolve to the lower
  // training row.
  std::vector<double> score(const Eigen::MatrixXd& x) const;
};

KnnModel fit_knn_state(const Eigen::MatrixXd& x, std::span<const int> y,
                       std::span<const double> w, int k);

}  // namespace ncv::learn
