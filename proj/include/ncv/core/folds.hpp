#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ncv::data {

struct Fold {
  std::vector<std::size_t> train;  // sorted ascending
  std::vector<std::size_t> test;   // sorted ascending
};

struct FoldPlan {
  std::vector<Fold> folds;
  int k = 0;
  std::uint64_t seed = 0;
  bool stratified = true;
  // Set when some class has fewer than k members, so some test folds miss it.
  bool degenerate = false;
  std::vector<std::string> warnings;
};

// Per class: shuffle indices with a generator seeded by `seed`, then deal
// them round-robin into k folds. Dealing continues across classes (positives
// first), so fold sizes differ by at most one. Test sets partition [0, n).
//
// A class with fewer than k members yields a plan flagged degenerate plus a
// warning; callers that need every fold to hold both classes use
// require_feasible().
FoldPlan stratified_kfold(std::span<const int> labels, int k, std::uint64_t seed);

// Throws DataError if the plan is degenerate.
void require_feasible(const FoldPlan& plan, const std::string& context);

// One stratified split with exactly round(n * test_fraction) test rows,
// allocated across classes by largest remainder.
Fold stratified_split(std::span<const int> labels, double test_fraction, std::uint64_t seed);

}  // namespace ncv::data
