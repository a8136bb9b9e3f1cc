#include "ncv/learners/tree.hpp"

#include "ncv/core/error.hpp"
#include "ncv/core/seed.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>

namespace ncv::learn {
namespace {

// Decreases at or below this are rounding noise, not information.
constexpr double kMinDecrease = 1e-12;

double gini2(double w0, double w1) {
  const double total = w0 + w1;
  return 1.0 - (w0 * w0 + w1 * w1) / (total * total);
}

struct ClassWeights {
  double w0 = 0.0;
  double w1 = 0.0;
  double total() const { return w0 + w1; }
  void add(int y, double w) { (y == 1 ? w1 : w0) += w; }
};

ClassWeights node_weights(std::span<const int> y, std::span<const double> w,
                          std::span<const std::size_t> rows) {
  ClassWeights c;
  for (std::size_t r : rows) c.add(y[r], w[r]);
  return c;
}

double decrease_for(const ClassWeights& parent, const ClassWeights& left) {
  const ClassWeights right{parent.w0 - left.w0, parent.w1 - left.w1};
  const double total = parent.total();
  return gini2(parent.w0, parent.w1) - left.total() / total * gini2(left.w0, left.w1) -
         right.total() / total * gini2(right.w0, right.w1);
}

class TreeBuilder {
 public:
  TreeBuilder(const Eigen::MatrixXd& x, std::span<const int> y, std::span<const double> w,
              const TreeParams& params, SplitMode mode, std::uint64_t seed)
      : x_(x), y_(y), w_(w), params_(params), mode_(mode), seed_(seed),
        n_candidates_(params.max_features.resolve(static_cast<std::size_t>(x.cols()))),
        importance_(static_cast<std::size_t>(x.cols()), 0.0) {}

  GrownTree build() {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < y_.size(); ++i) {
      if (w_[i] > 0.0) rows.push_back(i);
    }
    if (rows.empty()) throw FitError("tree: no rows with positive weight");
    grow(rows, 0);
    return {DecisionTree(std::move(nodes_)), std::move(importance_)};
  }

 private:
  int grow(std::vector<std::size_t>& rows, int depth) {
    const auto id = static_cast<int>(nodes_.size());
    const ClassWeights cw = node_weights(y_, w_, rows);
    nodes_.push_back(TreeNode{-1, 0.0, -1, -1, cw.w1 / cw.total()});

    const bool pure = cw.w0 == 0.0 || cw.w1 == 0.0;
    const bool depth_reached = params_.max_depth && depth >= *params_.max_depth;
    const bool too_small = rows.size() < 2 * static_cast<std::size_t>(params_.min_samples_leaf);
    if (pure || depth_reached || too_small) return id;

    const auto features = candidate_features(id);
    const auto split = best_split(x_, y_, w_, rows, features, mode_,
                                  derive_seed(seed_, "split", id), params_.min_samples_leaf);
    if (!split) return id;

    importance_[split->feature] += cw.total() * split->impurity_decrease;
    std::vector<std::size_t> left, right;
    for (std::size_t r : rows) {
      (x_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(split->feature)) <=
               split->threshold
           ? left
           : right)
          .push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    const int l = grow(left, depth + 1);
    const int r = grow(right, depth + 1);
    auto& node = nodes_[static_cast<std::size_t>(id)];
    node.feature = static_cast<int>(split->feature);
    node.threshold = split->threshold;
    node.left = l;
    node.right = r;
    return id;
  }

  std::vector<std::size_t> candidate_features(int node_id) const {
    std::vector<std::size_t> all(static_cast<std::size_t>(x_.cols()));
    std::iota(all.begin(), all.end(), std::size_t{0});
    if (n_candidates_ >= all.size()) return all;
    std::mt19937_64 rng(derive_seed(seed_, "features", node_id));
    // Partial Fisher-Yates.
    for (std::size_t i = 0; i < n_candidates_; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, all.size() - 1);
      std::swap(all[i], all[pick(rng)]);
    }
    all.resize(n_candidates_);
    std::sort(all.begin(), all.end());
    return all;
  }

  const Eigen::MatrixXd& x_;
  std::span<const int> y_;
  std::span<const double> w_;
  const TreeParams& params_;
  SplitMode mode_;
  std::uint64_t seed_;
  std::size_t n_candidates_;
  std::vector<TreeNode> nodes_;
  std::vector<double> importance_;
};

}  // namespace

double gini_impurity(std::span<const double> class_weights) {
  double total = 0.0, sq = 0.0;
  for (double c : class_weights) {
    if (c < 0.0) throw DataError("gini_impurity: negative class weight");
    total += c;
  }
  if (total <= 0.0) throw DataError("gini_impurity: empty node");
  for (double c : class_weights) sq += (c / total) * (c / total);
  return 1.0 - sq;
}

double gini_impurity(std::span<const std::size_t> class_counts) {
  std::vector<double> w(class_counts.begin(), class_counts.end());
  return gini_impurity(std::span<const double>(w));
}

std::optional<SplitDecision> best_split(const Eigen::MatrixXd& x, std::span<const int> y,
                                        std::span<const double> w,
                                        std::span<const std::size_t> rows,
                                        std::span<const std::size_t> features, SplitMode mode,
                                        std::uint64_t seed, int min_samples_leaf) {
  if (rows.size() < 2 || features.empty()) return std::nullopt;
  const auto msl = static_cast<std::size_t>(std::max(1, min_samples_leaf));
  const ClassWeights parent = node_weights(y, w, rows);
  if (parent.total() <= 0.0) return std::nullopt;

  std::vector<std::size_t> ordered(features.begin(), features.end());
  std::sort(ordered.begin(), ordered.end());

  std::optional<SplitDecision> best;
  auto consider = [&](std::size_t f, double threshold, double decrease) {
    if (decrease > kMinDecrease && (!best || decrease > best->impurity_decrease)) {
      best = SplitDecision{f, threshold, decrease};
    }
  };

  if (mode == SplitMode::exhaustive) {
    std::vector<std::pair<double, std::size_t>> column(rows.size());
    for (std::size_t f : ordered) {
      const auto col = static_cast<Eigen::Index>(f);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        column[i] = {x(static_cast<Eigen::Index>(rows[i]), col), rows[i]};
      }
      std::sort(column.begin(), column.end());
      ClassWeights left;
      for (std::size_t i = 0; i + 1 < column.size(); ++i) {
        left.add(y[column[i].second], w[column[i].second]);
        const double a = column[i].first;
        const double b = column[i + 1].first;
        if (a == b) continue;
        const std::size_t n_left = i + 1;
        if (n_left < msl || column.size() - n_left < msl) continue;
        double threshold = a + (b - a) / 2.0;
        if (threshold >= b) threshold = a;
        consider(f, threshold, decrease_for(parent, left));
      }
    }
    return best;
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t f : ordered) {
    const auto col = static_cast<Eigen::Index>(f);
    double lo = x(static_cast<Eigen::Index>(rows[0]), col);
    double hi = lo;
    for (std::size_t r : rows) {
      const double v = x(static_cast<Eigen::Index>(r), col);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (!(hi > lo)) continue;
    double threshold = lo + unit(rng) * (hi - lo);
    if (threshold >= hi) threshold = lo;
    ClassWeights left;
    std::size_t n_left = 0;
    for (std::size_t r : rows) {
      if (x(static_cast<Eigen::Index>(r), col) <= threshold) {
        left.add(y[r], w[r]);
        ++n_left;
      }
    }
    if (n_left < msl || rows.size() - n_left < msl) continue;
    consider(f, threshold, decrease_for(parent, left));
  }
  return best;
}

double DecisionTree::predict(const Eigen::MatrixXd& x, Eigen::Index row) const {
  std::size_t node = 0;
  while (nodes_[node].feature >= 0) {
    const auto& n = nodes_[node];
    node = static_cast<std::size_t>(x(row, n.feature) <= n.threshold ? n.left : n.right);
  }
  return nodes_[node].value;
}

std::size_t DecisionTree::n_leaves() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.feature < 0; }));
}

GrownTree grow_tree(const Eigen::MatrixXd& x, std::span<const int> y, std::span<const double> w,
                    const TreeParams& params, SplitMode mode, std::uint64_t seed) {
  if (static_cast<std::size_t>(x.rows()) != y.size() || y.size() != w.size()) {
    throw FitError("tree: inconsistent training sizes");
  }
  return TreeBuilder(x, y, w, params, mode, seed).build();
}

std::optional<std::vector<double>> normalize_importance(std::vector<double> raw) {
  const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
  if (!(total > 0.0)) return std::nullopt;
  for (double& v : raw) v /= total;
  return raw;
}

std::vector<double> TreeModel::score(const Eigen::MatrixXd& x) const {
  std::vector<double> out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) out[static_cast<std::size_t>(i)] = tree.predict(x, i);
  return out;
}

std::vector<double> ForestModel::score(const Eigen::MatrixXd& x) const {
  std::vector<double> out(static_cast<std::size_t>(x.rows()), 0.0);
  for (const auto& t : trees) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) out[static_cast<std::size_t>(i)] += t.predict(x, i);
  }
  const double n = static_cast<double>(trees.size());
  for (double& v : out) v /= n;
  return out;
}

}  // namespace ncv::learn
