#include "ncv/learners/grid.hpp"

#include "ncv/core/error.hpp"

namespace ncv::learn {

HyperParamGrid::HyperParamGrid(std::map<std::string, std::vector<ParamValue>> axes)
    : axes_(std::move(axes)) {
  for (const auto& [name, values] : axes_) {
    if (values.empty()) throw ConfigError("grid axis '" + name + "' has no candidates");
  }
}

std::size_t HyperParamGrid::cardinality() const {
  if (axes_.empty()) return 0;
  std::size_t n = 1;
  for (const auto& [name, values] : axes_) n *= values.size();
  return n;
}

std::vector<HyperParams> HyperParamGrid::enumerate() const {
  std::vector<HyperParams> out;
  if (axes_.empty()) return out;
  out.reserve(cardinality());
  std::vector<const std::pair<const std::string, std::vector<ParamValue>>*> dims;
  for (const auto& axis : axes_) dims.push_back(&axis);
  std::vector<std::size_t> counter(dims.size(), 0);
  while (true) {
    HyperParams candidate;
    for (std::size_t d = 0; d < dims.size(); ++d) {
      candidate[dims[d]->first] = dims[d]->second[counter[d]];
    }
    out.push_back(std::move(candidate));
    // Odometer: last axis varies fastest.
    std::size_t d = dims.size();
    while (d > 0) {
      --d;
      if (++counter[d] < dims[d]->second.size()) break;
      counter[d] = 0;
      if (d == 0) return out;
    }
  }
}

HyperParamGrid HyperParamGrid::with_overrides(
    const std::map<std::string, std::vector<ParamValue>>& axes) const {
  auto merged = axes_;
  for (const auto& [name, values] : axes) merged[name] = values;
  return HyperParamGrid(std::move(merged));
}

HyperParamGrid default_grid(ModelKind kind) {
  using V = std::vector<ParamValue>;
  const auto i = [](std::int64_t x) { return ParamValue{x}; };
  switch (kind) {
    case ModelKind::random_forest:
    case ModelKind::extra_trees:
      return HyperParamGrid({
          {"n_estimators", V{i(100), i(200), i(500)}},
          {"max_depth", V{std::monostate{}, i(5), i(10), i(20)}},
          {"min_samples_leaf", V{i(1), i(2), i(4), i(10)}},
          {"max_features", V{std::string("sqrt"), std::string("log2"), 0.5}},
      });
    case ModelKind::decision_tree:
      return HyperParamGrid({
          {"max_depth", V{std::monostate{}, i(3), i(5), i(10)}},
          {"min_samples_leaf", V{i(1), i(2), i(4), i(10)}},
      });
    case ModelKind::logistic_regression:
      return HyperParamGrid({{"C", V{0.01, 0.1, 1.0, 10.0}}});
    case ModelKind::gaussian_nb:
      return HyperParamGrid({{"var_smoothing", V{1e-9, 1e-6, 1e-3}}});
    case ModelKind::knn:
      return HyperParamGrid({{"n_neighbors", V{i(3), i(5), i(7), i(11), i(15)}}});
    case ModelKind::lda:
      return HyperParamGrid({{"ridge", V{1e-6, 1e-4, 1e-2}}});
  }
  throw ConfigError("default_grid: unknown model kind");
}

void validate_grid(ModelKind kind, const HyperParamGrid& grid) {
  for (const auto& candidate : grid.enumerate()) validate_hyperparams(kind, candidate);
}

}  // namespace ncv::learn
