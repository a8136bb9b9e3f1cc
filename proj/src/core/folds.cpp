#include "ncv/core/folds.hpp"

#include "ncv/core/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

namespace ncv::data {
namespace {

std::array<std::vector<std::size_t>, 2> split_by_class(std::span<const int> labels) {
  std::array<std::vector<std::size_t>, 2> members;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) throw DataError("folds: labels must be 0 or 1");
    members[static_cast<std::size_t>(labels[i])].push_back(i);
  }
  return members;
}

}  // namespace

FoldPlan stratified_kfold(std::span<const int> labels, int k, std::uint64_t seed) {
  if (k < 2) throw DataError("folds: k must be at least 2");
  if (static_cast<std::size_t>(k) > labels.size()) {
    throw DataError("folds: k=" + std::to_string(k) + " exceeds sample count " +
                    std::to_string(labels.size()));
  }
  auto members = split_by_class(labels);

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.stratified = true;

  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> tests(static_cast<std::size_t>(k));
  std::size_t dealt = 0;
  // Positives first, then negatives, continuing the deal position.
  for (int cls : {1, 0}) {
    auto& idx = members[static_cast<std::size_t>(cls)];
    if (idx.size() < static_cast<std::size_t>(k)) {
      plan.degenerate = true;
      plan.warnings.push_back("degenerate stratification: class " + std::to_string(cls) +
                              " has " + std::to_string(idx.size()) + " members for k=" +
                              std::to_string(k) + "; some test folds lack that class");
    }
    std::shuffle(idx.begin(), idx.end(), rng);
    for (std::size_t i : idx) tests[dealt++ % static_cast<std::size_t>(k)].push_back(i);
  }

  plan.folds.resize(static_cast<std::size_t>(k));
  for (std::size_t f = 0; f < tests.size(); ++f) {
    auto& fold = plan.folds[f];
    fold.test = std::move(tests[f]);
    std::sort(fold.test.begin(), fold.test.end());
    fold.train.reserve(labels.size() - fold.test.size());
    std::size_t t = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (t < fold.test.size() && fold.test[t] == i) {
        ++t;
      } else {
        fold.train.push_back(i);
      }
    }
  }
  return plan;
}

void require_feasible(const FoldPlan& plan, const std::string& context) {
  if (plan.degenerate) {
    throw DataError(context + ": stratification infeasible, a class has fewer than k=" +
                    std::to_string(plan.k) + " members");
  }
}

Fold stratified_split(std::span<const int> labels, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw DataError("split: test fraction must lie in (0, 1)");
  }
  auto members = split_by_class(labels);
  const std::size_t n = labels.size();
  const auto n_test = static_cast<std::size_t>(std::llround(static_cast<double>(n) * test_fraction));
  if (n_test == 0 || n_test >= n) throw DataError("split: test fraction leaves an empty side");

  // Largest-remainder allocation of the test budget across classes.
  std::array<std::size_t, 2> quota{};
  std::array<double, 2> remainder{};
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < 2; ++c) {
    const double exact = static_cast<double>(members[c].size()) * static_cast<double>(n_test) /
                         static_cast<double>(n);
    quota[c] = static_cast<std::size_t>(std::floor(exact));
    remainder[c] = exact - static_cast<double>(quota[c]);
    assigned += quota[c];
  }
  while (assigned < n_test) {
    const std::size_t c = remainder[1] > remainder[0] ? 1 : 0;
    ++quota[c];
    remainder[c] = -1.0;
    ++assigned;
  }

  std::mt19937_64 rng(seed);
  Fold fold;
  for (int cls : {1, 0}) {
    auto& idx = members[static_cast<std::size_t>(cls)];
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto q = quota[static_cast<std::size_t>(cls)];
    fold.test.insert(fold.test.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(q));
    fold.train.insert(fold.train.end(), idx.begin() + static_cast<std::ptrdiff_t>(q), idx.end());
  }
  std::sort(fold.test.begin(), fold.test.end());
  std::sort(fold.train.begin(), fold.train.end());
  return fold;
}

}  // namespace ncv::data
