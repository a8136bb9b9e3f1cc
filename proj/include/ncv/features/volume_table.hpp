#pragma once

#include "ncv/core/dataset.hpp"

#include <Eigen/Core>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ncv::features {

// Per-subject regional volumes (mm^3), total intracranial volume and
// optional age, with the binary outcome carried along for the Dataset.
//
// Volumes must be finite and >= 0. Nonpositive TIV is accepted here and
// turned into a subject rejection when features are built.
class RegionalVolumeTable {
 public:
  RegionalVolumeTable(std::vector<std::string> subject_ids, std::vector<std::string> regions,
                      Eigen::MatrixXd volumes, std::vector<double> tiv,
                      std::optional<std::vector<double>> age, std::vector<int> labels);

  // Every column other than tiv/age becomes a region.
  static RegionalVolumeTable from_dataset(const data::Dataset& ds, std::string_view tiv_column,
                                          std::optional<std::string_view> age_column = {});

  std::size_t n_subjects() const { return subject_ids_.size(); }
  const std::vector<std::string>& subject_ids() const { return subject_ids_; }
  const std::vector<std::string>& regions() const { return regions_; }
  const Eigen::MatrixXd& volumes() const { return volumes_; }
  const std::vector<double>& tiv() const { return tiv_; }
  const std::optional<std::vector<double>>& age() const { return age_; }
  const std::vector<int>& labels() const { return labels_; }

  bool has_region(std::string_view region) const;
  // Throws ConfigError naming the region when absent.
  Eigen::VectorXd region(std::string_view name) const;

  // Copy with every volume and TIV multiplied by per-subject factors.
  RegionalVolumeTable scaled(const std::vector<double>& factors) const;
  RegionalVolumeTable with_volume(std::size_t subject, std::string_view region, double v) const;

 private:
  std::vector<std::string> subject_ids_;
  std::vector<std::string> regions_;
  Eigen::MatrixXd volumes_;
  std::vector<double> tiv_;
  std::optional<std::vector<double>> age_;
  std::vector<int> labels_;
};

}  // namespace ncv::features
