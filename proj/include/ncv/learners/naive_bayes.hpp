#pragma once

#include <Eigen/Core>

#include <array>
#include <span>
#include <vector>

namespace ncv::learn {

struct GaussianNbModel {
  std::array<Eigen::VectorXd, 2> mean;
  std::array<Eigen::VectorXd, 2> variance;  // already floored by epsilon
  std::array<double, 2> log_prior{};
  double epsilon = 0.0;

  // Posterior probability of class 1.
  std::vector<double> score(const Eigen::MatrixXd& x) const;
};

// Per-class weighted means and variances; class priors from the summed
// sample weights. Every variance gets epsilon = var_smoothing * (largest
// per-feature variance of the training rows) added, falling back to
// var_smoothing when all features are constant.
GaussianNbModel fit_gaussian_nb_state(const Eigen::MatrixXd& x, std::span<const int> y,
                                      std::span<const double> w, double var_smoothing);

}  // namespace ncv::learn
