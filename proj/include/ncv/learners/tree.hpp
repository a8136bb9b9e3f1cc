#pragma once

#include "ncv/learners/model_spec.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ncv::learn {

// 1 - sum_c (count_c / total)^2. Throws on an empty node.
double gini_impurity(std::span<const double> class_weights);
double gini_impurity(std::span<const std::size_t> class_counts);

enum class SplitMode { exhaustive, randomized };

struct SplitDecision {
  std::size_t feature = 0;
  double threshold = 0.0;  // rows with x <= threshold go left
  // parent impurity - weighted mean child impurity, weights relative to the node
  double impurity_decrease = 0.0;
};

// Best split of `rows` over `features` (searched in ascending index order).
// exhaustive: candidate thresholds are midpoints between consecutive distinct
// values. randomized: one uniform threshold in (min, max) per feature, drawn
// from a generator seeded by `seed`. The first strict maximum wins; returns
// nullopt when no admissible split lowers impurity.
std::optional<SplitDecision> best_split(const Eigen::MatrixXd& x, std::span<const int> y,
                                        std::span<const double> w,
                                        std::span<const std::size_t> rows,
                                        std::span<const std::size_t> features, SplitMode mode,
                                        std::uint64_t seed, int min_samples_leaf = 1);

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  // weighted positive fraction
};

class DecisionTree {
 public:
  DecisionTree() = default;
  explicit DecisionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

  double predict(const Eigen::MatrixXd& x, Eigen::Index row) const;
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::size_t n_leaves() const;

 private:
  std::vector<TreeNode> nodes_;
};

struct GrownTree {
  DecisionTree tree;
  // Node-weighted impurity decrease per feature, not normalized.
  std::vector<double> importance;
};

// Rows with zero weight are ignored.
GrownTree grow_tree(const Eigen::MatrixXd& x, std::span<const int> y, std::span<const double> w,
                    const TreeParams& params, SplitMode mode, std::uint64_t seed);

// Normalizes to sum 1; nullopt when every entry is zero (tree never split).
std::optional<std::vector<double>> normalize_importance(std::vector<double> raw);

struct TreeModel {
  DecisionTree tree;
  std::vector<double> score(const Eigen::MatrixXd& x) const;
};

struct ForestModel {
  std::vector<DecisionTree> trees;
  std::vector<double> score(const Eigen::MatrixXd& x) const;
};

}  // namespace ncv::learn
