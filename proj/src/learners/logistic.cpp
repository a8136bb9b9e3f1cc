#include "ncv/learners/logistic.hpp"

#include "ncv/learners/standardize.hpp"

#include <Eigen/Cholesky>

#include <cmath>

namespace ncv::learn {
namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

}  // namespace

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

LogisticObjective::LogisticObjective(Eigen::MatrixXd x, Eigen::VectorXd y, Eigen::VectorXd w,
                                     double c)
    : x_(std::move(x)), y_(std::move(y)), w_(std::move(w)), inv_c_(1.0 / c) {}

Eigen::VectorXd LogisticObjective::linear(const Eigen::VectorXd& beta) const {
  return (x_ * beta.tail(x_.cols())).array() + beta(0);
}

double LogisticObjective::value(const Eigen::VectorXd& beta) const {
  const Eigen::VectorXd z = linear(beta);
  double f = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) f += w_(i) * (softplus(z(i)) - y_(i) * z(i));
  return f + 0.5 * inv_c_ * beta.tail(x_.cols()).squaredNorm();
}

Eigen::VectorXd LogisticObjective::gradient(const Eigen::VectorXd& beta) const {
  const Eigen::VectorXd z = linear(beta);
  Eigen::VectorXd r(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) r(i) = w_(i) * (sigmoid(z(i)) - y_(i));
  Eigen::VectorXd g(dimension());
  g(0) = r.sum();
  g.tail(x_.cols()) = x_.transpose() * r + inv_c_ * beta.tail(x_.cols());
  return g;
}

Eigen::MatrixXd LogisticObjective::hessian(const Eigen::VectorXd& beta) const {
  const Eigen::VectorXd z = linear(beta);
  const Eigen::Index p = x_.cols();
  Eigen::MatrixXd design(x_.rows(), p + 1);
  design.col(0).setOnes();
  design.rightCols(p) = x_;
  Eigen::VectorXd d(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double s = sigmoid(z(i));
    d(i) = w_(i) * s * (1.0 - s);
  }
  Eigen::MatrixXd h = design.transpose() * d.asDiagonal() * design;
  h.diagonal().tail(p).array() += inv_c_;
  return h;
}

std::vector<double> LogisticModel::score(const Eigen::MatrixXd& x) const {
  const Eigen::VectorXd z = (x * coef).array() + intercept;
  std::vector<double> out(static_cast<std::size_t>(z.size()));
  for (Eigen::Index i = 0; i < z.size(); ++i) out[static_cast<std::size_t>(i)] = sigmoid(z(i));
  return out;
}

LogisticModel fit_logistic_state(const Eigen::MatrixXd& x, std::span<const int> y,
                                 std::span<const double> w, double c, int max_iter,
                                 double tolerance) {
  const Standardizer scaler = Standardizer::fit(x);
  Eigen::VectorXd yv(static_cast<Eigen::Index>(y.size()));
  Eigen::VectorXd wv(static_cast<Eigen::Index>(w.size()));
  for (std::size_t i = 0; i < y.size(); ++i) {
    yv(static_cast<Eigen::Index>(i)) = y[i];
    wv(static_cast<Eigen::Index>(i)) = w[i];
  }
  const LogisticObjective objective(scaler.transform(x), yv, wv, c);

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(objective.dimension());
  double f = objective.value(beta);
  Eigen::VectorXd g = objective.gradient(beta);
  LogisticModel model;
  model.converged = false;
  int it = 0;
  for (; it < max_iter; ++it) {
    if (g.lpNorm<Eigen::Infinity>() < tolerance) {
      model.converged = true;
      break;
    }
    Eigen::VectorXd step = objective.hessian(beta).ldlt().solve(-g);
    if (!step.allFinite() || step.dot(g) >= 0.0) step = -g;
    // Backtracking (Armijo) keeps every iterate a descent step.
    double t = 1.0;
    Eigen::VectorXd candidate = beta + step;
    double f_new = objective.value(candidate);
    while (f_new > f + 1e-4 * t * g.dot(step) && t > 1e-12) {
      t *= 0.5;
      candidate = beta + t * step;
      f_new = objective.value(candidate);
    }
    if (f_new > f) break;
    beta = candidate;
    f = f_new;
    g = objective.gradient(beta);
  }
  if (!model.converged && g.lpNorm<Eigen::Infinity>() < tolerance) model.converged = true;
  model.iterations = it;
  model.gradient_norm = g.lpNorm<Eigen::Infinity>();

  // Fold the standardization back: z = b0 + sum_j b_j (x_j - m_j) / s_j.
  const Eigen::VectorXd b = beta.tail(x.cols());
  model.coef = b.array() / scaler.scale.array();
  model.intercept = beta(0) - (b.array() * scaler.mean.array() / scaler.scale.array()).sum();
  return model;
}

}  // namespace ncv::learn
