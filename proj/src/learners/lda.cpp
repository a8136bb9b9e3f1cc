#include "ncv/learners/lda.hpp"

#include "ncv/core/error.hpp"
#include "ncv/learners/logistic.hpp"

#include <Eigen/Cholesky>

#include <array>
#include <cmath>
#include <sstream>

namespace ncv::learn {

LdaModel fit_lda_state(const Eigen::MatrixXd& x, std::span<const int> y,
                       std::span<const double> w, double ridge) {
  const Eigen::Index p = x.cols();
  const Standardizer scaler = Standardizer::fit(x);
  const Eigen::MatrixXd z = scaler.transform(x);

  std::array<Eigen::VectorXd, 2> mu{Eigen::VectorXd::Zero(p), Eigen::VectorXd::Zero(p)};
  std::array<double, 2> total{0.0, 0.0};
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    const auto c = static_cast<std::size_t>(y[static_cast<std::size_t>(i)]);
    total[c] += w[static_cast<std::size_t>(i)];
    mu[c] += w[static_cast<std::size_t>(i)] * z.row(i).transpose();
  }
  if (total[0] <= 0.0 || total[1] <= 0.0) throw FitError("lda: both classes required");
  mu[0] /= total[0];
  mu[1] /= total[1];

  Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    const auto c = static_cast<std::size_t>(y[static_cast<std::size_t>(i)]);
    const Eigen::VectorXd d = z.row(i).transpose() - mu[c];
    scatter.noalias() += w[static_cast<std::size_t>(i)] * d * d.transpose();
  }
  const double dof = total[0] + total[1] - 2.0;
  if (dof <= 0.0) throw FitError("lda: need more than two training samples");
  Eigen::MatrixXd cov = scatter / dof;

  LdaModel m;
  m.ridge_lambda = ridge * cov.trace() / static_cast<double>(p);
  cov.diagonal().array() += m.ridge_lambda;
  const Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "lda: covariance solve failed with ridge lambda " << m.ridge_lambda
        << " (ridge " << ridge << ")";
    throw FitError(msg.str());
  }
  const Eigen::VectorXd wz = llt.solve(mu[1] - mu[0]);
  const double bz = -0.5 * (mu[1] + mu[0]).dot(wz) + std::log(total[1] / total[0]);

  m.coef = wz.array() / scaler.scale.array();
  m.intercept = bz - m.coef.dot(scaler.mean);
  return m;
}

std::vector<double> LdaModel::score(const Eigen::MatrixXd& x) const {
  const Eigen::VectorXd eta = (x * coef).array() + intercept;
  std::vector<double> out(static_cast<std::size_t>(eta.size()));
  for (Eigen::Index i = 0; i < eta.size(); ++i) out[static_cast<std::size_t>(i)] = sigmoid(eta(i));
  return out;
}

}  // namespace ncv::learn
