#pragma once

#include "ncv/learners/model_spec.hpp"

#include <map>
#include <string>
#include <vector>

namespace ncv::learn {

// Candidate lists per hyperparameter name. Enumeration is a cartesian
// product in lexicographic name order (first name varies slowest), values in
// list order.
class HyperParamGrid {
 public:
  HyperParamGrid() = default;
  explicit HyperParamGrid(std::map<std::string, std::vector<ParamValue>> axes);

  const std::map<std::string, std::vector<ParamValue>>& axes() const { return axes_; }
  std::size_t cardinality() const;
  bool empty() const { return axes_.empty(); }

  std::vector<HyperParams> enumerate() const;

  // Replaces (or adds) whole axes.
  HyperParamGrid with_overrides(const std::map<std::string, std::vector<ParamValue>>& axes) const;

 private:
  std::map<std::string, std::vector<ParamValue>> axes_;
};

// Artifact-local default grids (version 1). Forests: n_estimators
// {100,200,500} x max_depth {none,5,10,20} x min_samples_leaf {1,2,4,10} x
// max_features {sqrt,log2,0.5}.
HyperParamGrid default_grid(ModelKind kind);
inline constexpr int kDefaultGridVersion = 1;

// Throws ConfigError if any candidate fails the kind's schema.
void validate_grid(ModelKind kind, const HyperParamGrid& grid);

}  // namespace ncv::learn
