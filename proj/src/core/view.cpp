#include "ncv/core/view.hpp"

#include "ncv/core/error.hpp"

#include <numeric>

namespace ncv::data {

SampleView::SampleView(const Dataset* data, std::vector<std::size_t> rows)
    : data_(data), rows_(std::move(rows)) {
  for (std::size_t r : rows_) {
    if (r >= data_->n_samples()) throw DataError("view: row index out of range");
  }
}

SampleView SampleView::all(const Dataset& data) {
  std::vector<std::size_t> rows(data.n_samples());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return SampleView(&data, std::move(rows));
}

Eigen::MatrixXd SampleView::matrix() const {
  const auto& x = data_->features();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows_.size()), x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      out(static_cast<Eigen::Index>(i), j) = x(static_cast<Eigen::Index>(rows_[i]), j);
    }
  }
  return out;
}

std::vector<int> SampleView::labels() const {
  std::vector<int> y;
  y.reserve(rows_.size());
  for (std::size_t r : rows_) y.push_back(data_->labels()[r]);
  return y;
}

SampleView SampleView::subset(std::span<const std::size_t> positions) const {
  std::vector<std::size_t> rows;
  rows.reserve(positions.size());
  for (std::size_t p : positions) {
    if (p >= rows_.size()) throw DataError("view: subset position outside the view");
    rows.push_back(rows_[p]);
  }
  return SampleView(data_, std::move(rows));
}

SampleView AuditedData::view(Stage stage, int fold, std::vector<std::size_t> rows,
                             int candidate) const {
  ledger_->record(stage, fold, candidate, rows);
  return SampleView(data_, std::move(rows));
}

}  // namespace ncv::data
