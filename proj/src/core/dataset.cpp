#include "ncv/core/dataset.hpp"

#include "ncv/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace ncv::data {

Dataset::Dataset(std::vector<std::string> feature_names, Eigen::MatrixXd features,
                 std::vector<int> labels, std::vector<std::string> subject_ids,
                 std::vector<std::string> column_provenance)
    : feature_names_(std::move(feature_names)),
      features_(std::move(features)),
      labels_(std::move(labels)),
      subject_ids_(std::move(subject_ids)),
      provenance_(std::move(column_provenance)) {
  if (static_cast<std::size_t>(features_.cols()) != feature_names_.size()) {
    throw DataError("dataset: " + std::to_string(features_.cols()) + " columns but " +
                    std::to_string(feature_names_.size()) + " feature names");
  }
  if (static_cast<std::size_t>(features_.rows()) != labels_.size() ||
      subject_ids_.size() != labels_.size()) {
    throw DataError("dataset: row count mismatch between features, labels and subject ids");
  }
  if (provenance_.empty()) {
    provenance_.assign(feature_names_.size(), kRawProvenance);
  } else if (provenance_.size() != feature_names_.size()) {
    throw DataError("dataset: provenance tags do not match column count");
  }
  std::unordered_set<std::string> seen;
  for (const auto& name : feature_names_) {
    if (!seen.insert(name).second) throw DataError("dataset: duplicate feature name '" + name + "'");
  }
  seen.clear();
  for (const auto& id : subject_ids_) {
    if (!seen.insert(id).second) throw DataError("dataset: duplicate subject id '" + id + "'");
  }
  for (int y : labels_) {
    if (y != 0 && y != 1) throw DataError("dataset: labels must be 0 or 1");
  }
  if (!features_.allFinite()) throw DataError("dataset: non-finite feature value");
}

std::size_t Dataset::n_positive() const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), 1));
}

bool Dataset::has_both_classes() const {
  const auto pos = n_positive();
  return pos > 0 && pos < labels_.size();
}

std::size_t Dataset::column_index(const std::string& name) const {
  const auto it = std::find(feature_names_.begin(), feature_names_.end(), name);
  return it == feature_names_.end() ? npos
                                    : static_cast<std::size_t>(it - feature_names_.begin());
}

Dataset Dataset::select_rows(const std::vector<std::size_t>& rows) const {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), features_.cols());
  std::vector<int> y;
  std::vector<std::string> ids;
  y.reserve(rows.size());
  ids.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    x.row(static_cast<Eigen::Index>(i)) = features_.row(static_cast<Eigen::Index>(rows[i]));
    y.push_back(labels_.at(rows[i]));
    ids.push_back(subject_ids_.at(rows[i]));
  }
  return Dataset(feature_names_, std::move(x), std::move(y), std::move(ids), provenance_);
}

void require_both_classes(const std::vector<int>& labels, const char* context) {
  const auto pos = std::count(labels.begin(), labels.end(), 1);
  if (pos == 0 || static_cast<std::size_t>(pos) == labels.size()) {
    throw FitError(std::string(context) + ": both classes must be present (got " +
                   std::to_string(pos) + " positive of " + std::to_string(labels.size()) + ")");
  }
}

}  // namespace ncv::data
