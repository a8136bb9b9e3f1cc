#pragma once

#include "ncv/core/view.hpp"
#include "ncv/learners/grid.hpp"
#include "ncv/learners/model_spec.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ncv::protocol {

struct CandidateScore {
  learn::HyperParams params;
  std::optional<double> mean_ap;  // absent when the candidate failed to fit
  std::string error;
};

struct GridSearchResult {
  learn::HyperParams chosen;  // merged over the base spec's hyperparameters
  std::size_t chosen_index = 0;
  double best_ap = 0.0;
  std::vector<CandidateScore> candidates;
};

// Mean out-of-fold average precision per candidate over inner_k stratified
// folds of `train`, fold plan seeded by `seed`. Candidate fits share seeds
// per inner fold, so identical candidates score identically; the first
// maximum in enumeration order wins. Throws DataError if the inner split is
// infeasible and ProtocolError if every candidate fails.
GridSearchResult inner_grid_search(const data::SampleView& train, const learn::ModelSpec& spec,
                                   const learn::HyperParamGrid& grid, int inner_k,
                                   std::uint64_t seed);

}  // namespace ncv::protocol
