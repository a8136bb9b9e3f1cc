#pragma once

#include "ncv/core/dataset.hpp"
#include "ncv/protocol/config.hpp"
#include "ncv/protocol/evaluation.hpp"

#include <optional>
#include <vector>

namespace ncv::protocol {

struct StrategyComparison {
  std::vector<EvaluationReport> reports;  // one per requested strategy, in order
  // Mean BA of naive_cv_grid minus that of nested_calibrated, when both ran.
  std::optional<double> naive_minus_nested_ba;

  const EvaluationReport* find(Strategy s) const;
};

// Runs every strategy on the same data and root seed (hence the same outer
// plan). Throws ConfigError with fewer than two or repeated strategies.
StrategyComparison compare_strategies(const data::Dataset& data, const ProtocolConfig& base,
                                      const std::vector<Strategy>& strategies, int workers = 1);

}  // namespace ncv::protocol
