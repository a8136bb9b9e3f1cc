#include "ncv/learners/knn.hpp"

#include "ncv/core/error.hpp"

#include <algorithm>
#include <numeric>

namespace ncv::learn {

KnnModel fit_knn_state(const Eigen::MatrixXd& x, std::span<const int> y,
                       std::span<const double> w, int k) {
  if (k < 1) throw FitError("knn: n_neighbors must be at least 1");
  if (static_cast<Eigen::Index>(k) > x.rows()) {
    throw FitError("knn: n_neighbors=" + std::to_string(k) + " exceeds training size " +
                   std::to_string(x.rows()));
  }
  KnnModel m;
  m.scaler = Standardizer::fit(x);
  m.train = m.scaler.transform(x);
  m.labels.assign(y.begin(), y.end());
  m.weights.assign(w.begin(), w.end());
  m.k = k;
  return m;
}

std::vector<double> KnnModel::score(const Eigen::MatrixXd& x) const {
  const Eigen::MatrixXd q = scaler.transform(x);
  const auto n = static_cast<std::size_t>(train.rows());
  const auto kk = static_cast<std::size_t>(k);
  std::vector<double> out(static_cast<std::size_t>(q.rows()));
  std::vector<std::pair<double, std::size_t>> dist(n);
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    for (std::size_t t = 0; t < n; ++t) {
      dist[t] = {(train.row(static_cast<Eigen::Index>(t)) - q.row(i)).squaredNorm(), t};
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(kk), dist.end());
    double pos = 0.0, total = 0.0;
    for (std::size_t t = 0; t < kk; ++t) {
      const std::size_t r = dist[t].second;
      total += weights[r];
      if (labels[r] == 1) pos += weights[r];
    }
    out[static_cast<std::size_t>(i)] = total > 0.0 ? pos / total : 0.5;
  }
  return out;
}

}  // namespace ncv::learn
