#pragma once

#include "ncv/core/dataset.hpp"
#include "ncv/core/ledger.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ncv::data {

// Row-scoped, read-only window onto a Dataset. Learners and protocol stages
// see samples only through views; a view cannot widen itself, only narrow
// to a subset of its own rows. The Dataset must outlive the view.
class SampleView {
 public:
  // Unaudited view over every row, for direct (non-protocol) use.
  static SampleView all(const Dataset& data);

  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  // Dataset row ids covered by this view, in view order.
  std::span<const std::size_t> rows() const { return rows_; }
  const std::vector<std::string>& feature_names() const { return data_->feature_names(); }
  std::size_t n_features() const { return data_->n_features(); }

  Eigen::MatrixXd matrix() const;
  std::vector<int> labels() const;

  // Narrow to positions [0, size()) of this view.
  SampleView subset(std::span<const std::size_t> positions) const;

 private:
  SampleView(const Dataset* data, std::vector<std::size_t> rows);
  friend class AuditedData;

  const Dataset* data_;
  std::vector<std::size_t> rows_;
};

// Gatekeeper used by protocol code: every view it hands out is logged in the
// access ledger under (stage, fold, candidate) before any row is readable.
class AuditedData {
 public:
  AuditedData(const Dataset& data, AccessLedger& ledger) : data_(&data), ledger_(&ledger) {}

  SampleView view(Stage stage, int fold, std::vector<std::size_t> rows, int candidate = -1) const;

  std::size_t n_samples() const { return data_->n_samples(); }
  // Labels drive fold planning only; stratifying on them is not a leak.
  const std::vector<int>& labels() const { return data_->labels(); }
  const std::vector<std::string>& feature_names() const { return data_->feature_names(); }

 private:
  const Dataset* data_;
  AccessLedger* ledger_;
};

}  // namespace ncv::data
