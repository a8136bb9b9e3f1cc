#pragma once

#include "ncv/learners/standardize.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace ncv::learn {

struct LdaModel {
  // Discriminant on the raw feature scale: log-odds = coef . x + intercept.
  Eigen::VectorXd coef;
  double intercept = 0.0;
  double ridge_lambda = 0.0;  // in standardized units

  std::vector<double> score(const Eigen::MatrixXd& x) const;
};

// Two-class LDA on internally standardized features. Pooled within-class
// covariance S (weighted scatter / (sum of weights - 2)) plus lambda I with
// lambda = ridge * trace(S) / p; w = (S + lambda I)^-1 (mu1 - mu0).
LdaModel fit_lda_state(const Eigen::MatrixXd& x, std::span<const int> y,
                       std::span<const double> w, double ridge);

}  // namespace ncv::learn
