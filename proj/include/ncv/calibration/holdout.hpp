#pragma once

#include "ncv/core/view.hpp"
#include "ncv/learners/model_spec.hpp"

#include <cstdint>
#include <vector>

namespace ncv::calib {

inline constexpr int kDefaultInnerK = 3;

struct HeldOutScores {
  std::vector<double> scores;  // view order
  std::vector<int> labels;
};

// Out-of-fold scores over `train`: stratified inner_k folds (seeded by
// `seed`), each part scored by a model fitted on the rest. Only rows of
// `train` are touched. Model seeds derive from `seed` and the inner fold.
// Throws DataError when some remainder lacks a class.
HeldOutScores holdout_scores(const data::SampleView& train, const learn::ModelSpec& spec,
                             int inner_k, std::uint64_t seed);

}  // namespace ncv::calib
