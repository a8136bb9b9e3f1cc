#include "ncv/features/volume_table.hpp"

#include "ncv/core/error.hpp"

#include <cmath>
#include <set>

namespace ncv::features {

RegionalVolumeTable::RegionalVolumeTable(std::vector<std::string> subject_ids,
                                         std::vector<std::string> regions,
                                         Eigen::MatrixXd volumes, std::vector<double> tiv,
                                         std::optional<std::vector<double>> age,
                                         std::vector<int> labels)
    : subject_ids_(std::move(subject_ids)),
      regions_(std::move(regions)),
      volumes_(std::move(volumes)),
      tiv_(std::move(tiv)),
      age_(std::move(age)),
      labels_(std::move(labels)) {
  const auto n = static_cast<Eigen::Index>(subject_ids_.size());
  if (volumes_.rows() != n || tiv_.size() != subject_ids_.size() ||
      labels_.size() != subject_ids_.size() || (age_ && age_->size() != subject_ids_.size())) {
    throw DataError("volume table: per-subject sizes disagree");
  }
  if (volumes_.cols() != static_cast<Eigen::Index>(regions_.size())) {
    throw DataError("volume table: region names do not match the volume columns");
  }
  std::set<std::string> seen;
  for (const auto& r : regions_) {
    if (!seen.insert(r).second) throw DataError("volume table: duplicate region '" + r + "'");
  }
  for (Eigen::Index j = 0; j < volumes_.cols(); ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double v = volumes_(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw DataError("volume table: subject '" + subject_ids_[static_cast<std::size_t>(i)] +
                        "' has invalid volume for '" + regions_[static_cast<std::size_t>(j)] + "'");
      }
    }
  }
  for (std::size_t i = 0; i < tiv_.size(); ++i) {
    if (!std::isfinite(tiv_[i])) throw DataError("volume table: non-finite tiv for '" + subject_ids_[i] + "'");
    if (age_ && !std::isfinite((*age_)[i])) {
      throw DataError("volume table: non-finite age for '" + subject_ids_[i] + "'");
    }
  }
}

RegionalVolumeTable RegionalVolumeTable::from_dataset(const data::Dataset& ds,
                                                      std::string_view tiv_column,
                                                      std::optional<std::string_view> age_column) {
  const std::size_t tiv_idx = ds.column_index(std::string(tiv_column));
  if (tiv_idx == data::Dataset::npos) {
    throw ConfigError("tiv column '" + std::string(tiv_column) + "' not found");
  }
  std::size_t age_idx = data::Dataset::npos;
  if (age_column) {
    age_idx = ds.column_index(std::string(*age_column));
    if (age_idx == data::Dataset::npos) {
      throw ConfigError("age column '" + std::string(*age_column) + "' not found");
    }
  }
  std::vector<std::string> regions;
  std::vector<Eigen::Index> cols;
  for (std::size_t j = 0; j < ds.n_features(); ++j) {
    if (j == tiv_idx || j == age_idx) continue;
    regions.push_back(ds.feature_names()[j]);
    cols.push_back(static_cast<Eigen::Index>(j));
  }
  const auto n = static_cast<Eigen::Index>(ds.n_samples());
  Eigen::MatrixXd vol(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    vol.col(static_cast<Eigen::Index>(c)) = ds.features().col(cols[c]);
  }
  const auto& f = ds.features();
  std::vector<double> tiv(f.rows());
  for (Eigen::Index i = 0; i < n; ++i) tiv[static_cast<std::size_t>(i)] = f(i, static_cast<Eigen::Index>(tiv_idx));
  std::optional<std::vector<double>> age;
  if (age_idx != data::Dataset::npos) {
    age.emplace(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) (*age)[static_cast<std::size_t>(i)] = f(i, static_cast<Eigen::Index>(age_idx));
  }
  return RegionalVolumeTable(ds.subject_ids(), std::move(regions), std::move(vol), std::move(tiv),
                             std::move(age), ds.labels());
}

bool RegionalVolumeTable::has_region(std::string_view region) const {
  for (const auto& r : regions_) {
    if (r == region) return true;
  }
  return false;
}

Eigen::VectorXd RegionalVolumeTable::region(std::string_view name) const {
  for (std::size_t j = 0; j < regions_.size(); ++j) {
    if (regions_[j] == name) return volumes_.col(static_cast<Eigen::Index>(j));
  }
  throw ConfigError("region '" + std::string(name) + "' is missing from the volume table");
}

RegionalVolumeTable RegionalVolumeTable::scaled(const std::vector<double>& factors) const {
  if (factors.size() != n_subjects()) throw DataError("scaled: one factor per subject required");
  Eigen::MatrixXd v = volumes_;
  std::vector<double> t = tiv_;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    v.row(static_cast<Eigen::Index>(i)) *= factors[i];
    t[i] *= factors[i];
  }
  return RegionalVolumeTable(subject_ids_, regions_, std::move(v), std::move(t), age_, labels_);
}

RegionalVolumeTable RegionalVolumeTable::with_volume(std::size_t subject, std::string_view region,
                                                     double value) const {
  Eigen::MatrixXd v = volumes_;
  for (std::size_t j = 0; j < regions_.size(); ++j) {
    if (regions_[j] == region) {
      v(static_cast<Eigen::Index>(subject), static_cast<Eigen::Index>(j)) = value;
      return RegionalVolumeTable(subject_ids_, regions_, std::move(v), tiv_, age_, labels_);
    }
  }
  throw ConfigError("region '" + std::string(region) + "' is missing from the volume table");
}

}  // namespace ncv::features
