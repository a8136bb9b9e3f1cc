#include "ncv/learners/naive_bayes.hpp"

#include "ncv/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ncv::learn {

GaussianNbModel fit_gaussian_nb_state(const Eigen::MatrixXd& x, std::span<const int> y,
                                      std::span<const double> w, double var_smoothing) {
  const Eigen::Index p = x.cols();
  GaussianNbModel m;
  std::array<double, 2> total{0.0, 0.0};
  for (int c = 0; c < 2; ++c) {
    m.mean[static_cast<std::size_t>(c)] = Eigen::VectorXd::Zero(p);
    m.variance[static_cast<std::size_t>(c)] = Eigen::VectorXd::Zero(p);
  }
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const auto c = static_cast<std::size_t>(y[static_cast<std::size_t>(i)]);
    const double wi = w[static_cast<std::size_t>(i)];
    total[c] += wi;
    m.mean[c] += wi * x.row(i).transpose();
  }
  if (total[0] <= 0.0 || total[1] <= 0.0) throw FitError("gaussian_nb: both classes required");
  for (std::size_t c = 0; c < 2; ++c) m.mean[c] /= total[c];
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const auto c = static_cast<std::size_t>(y[static_cast<std::size_t>(i)]);
    m.variance[c] +=
        w[static_cast<std::size_t>(i)] * (x.row(i).transpose() - m.mean[c]).array().square().matrix();
  }

  double max_var = 0.0;
  const double n = static_cast<double>(x.rows());
  for (Eigen::Index j = 0; j < p; ++j) {
    const double mu = x.col(j).mean();
    max_var = std::max(max_var, (x.col(j).array() - mu).square().sum() / n);
  }
  m.epsilon = var_smoothing * (max_var > 0.0 ? max_var : 1.0);
  for (std::size_t c = 0; c < 2; ++c) {
    m.variance[c] = (m.variance[c] / total[c]).array() + m.epsilon;
    if ((m.variance[c].array() <= 0.0).any()) {
      // Only reachable with var_smoothing = 0 and a constant feature.
      m.variance[c] = m.variance[c].cwiseMax(std::numeric_limits<double>::min());
    }
  }
  const double all = total[0] + total[1];
  m.log_prior = {std::log(total[0] / all), std::log(total[1] / all)};
  return m;
}

std::vector<double> GaussianNbModel::score(const Eigen::MatrixXd& x) const {
  std::vector<double> out(static_cast<std::size_t>(x.rows()));
  const double log2pi = std::log(2.0 * std::numbers::pi);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    std::array<double, 2> joint{};
    for (std::size_t c = 0; c < 2; ++c) {
      const auto diff = (x.row(i).transpose() - mean[c]).array();
      joint[c] = log_prior[c] -
                 0.5 * (variance[c].array().log() + log2pi + diff.square() / variance[c].array()).sum();
    }
    // P(1 | x) = 1 / (1 + exp(j0 - j1)), evaluated stably.
    const double d = joint[0] - joint[1];
    out[static_cast<std::size_t>(i)] = d > 0.0 ? std::exp(-d) / (1.0 + std::exp(-d)) : 1.0 / (1.0 + std::exp(d));
  }
  return out;
}

}  // namespace ncv::learn
