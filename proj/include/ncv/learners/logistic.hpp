#pragma once

#include <Eigen/Core>

#include <span>
#include <vector>

namespace ncv::learn {

// Weighted L2-regularized negative log-likelihood over standardized
// features. Parameter layout: beta = [intercept, coef_1 .. coef_p]; the
// intercept is not penalized.
//
//   f(beta) = sum_i w_i [log(1 + exp(z_i)) - y_i z_i] + |coef|^2 / (2C)
class LogisticObjective {
 public:
  LogisticObjective(Eigen::MatrixXd x, Eigen::VectorXd y, Eigen::VectorXd w, double c);

  double value(const Eigen::VectorXd& beta) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& beta) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& beta) const;
  Eigen::Index dimension() const { return x_.cols() + 1; }

 private:
  Eigen::VectorXd linear(const Eigen::VectorXd& beta) const;

  Eigen::MatrixXd x_;
  Eigen::VectorXd y_, w_;
  double inv_c_;
};

struct LogisticModel {
  // Coefficients on the raw (unstandardized) feature scale.
  Eigen::VectorXd coef;
  double intercept = 0.0;
  bool converged = true;
  int iterations = 0;
  double gradient_norm = 0.0;

  std::vector<double> score(const Eigen::MatrixXd& x) const;
};

// Newton iterations with backtracking line search until the gradient
// infinity-norm drops below `tolerance` or `max_iter` is reached. Features
// are standardized on these rows and the scaling is folded back into the
// returned coefficients.
LogisticModel fit_logistic_state(const Eigen::MatrixXd& x, std::span<const int> y,
                                 std::span<const double> w, double c, int max_iter,
                                 double tolerance = 1e-6);

double sigmoid(double z);

}  // namespace ncv::learn
