#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <string>
#include <vector>

namespace ncv::data {

inline constexpr const char* kRawProvenance = "raw";

// Immutable feature matrix with binary labels.
//
// Invariants (checked on construction):
//  - feature names are unique and match the column count;
//  - labels are 0 (low-risk) or 1 (elevated-risk);
//  - every entry is finite;
//  - subject ids are unique, one per row.
// Both classes need not be present; fitting operations check that themselves.
class Dataset {
 public:
  Dataset(std::vector<std::string> feature_names, Eigen::MatrixXd features,
          std::vector<int> labels, std::vector<std::string> subject_ids,
          std::vector<std::string> column_provenance = {});

  std::size_t n_samples() const { return labels_.size(); }
  std::size_t n_features() const { return feature_names_.size(); }

  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const Eigen::MatrixXd& features() const { return features_; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<std::string>& subject_ids() const { return subject_ids_; }
  const std::vector<std::string>& column_provenance() const { return provenance_; }

  std::size_t n_positive() const;
  bool has_both_classes() const;

  // Index of a named column, or npos.
  std::size_t column_index(const std::string& name) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  // Copy restricted to the given rows (in the given order).
  Dataset select_rows(const std::vector<std::size_t>& rows) const;

 private:
  std::vector<std::string> feature_names_;
  Eigen::MatrixXd features_;
  std::vector<int> labels_;
  std::vector<std::string> subject_ids_;
  std::vector<std::string> provenance_;
};

// Throws FitError unless both classes are present.
void require_both_classes(const std::vector<int>& labels, const char* context);

}  // namespace ncv::data
