#include "ncv/protocol/compare.hpp"

#include "ncv/core/error.hpp"
#include "ncv/protocol/strategies.hpp"

#include <set>

namespace ncv::protocol {

const EvaluationReport* StrategyComparison::find(Strategy s) const {
  for (const auto& r : reports) {
    if (r.strategy == s) return &r;
  }
  return nullptr;
}

StrategyComparison compare_strategies(const data::Dataset& data, const ProtocolConfig& base,
                                      const std::vector<Strategy>& strategies, int workers) {
  if (strategies.size() < 2) {
    throw ConfigError("compare_strategies: at least two strategies are required");
  }
  std::set<Strategy> seen;
  for (Strategy s : strategies) {
    if (!seen.insert(s).second) {
      throw ConfigError("compare_strategies: strategy '" + std::string(to_string(s)) + "' repeated");
    }
  }
  StrategyComparison out;
  for (Strategy s : strategies) {
    ProtocolConfig cfg = base;
    cfg.strategy = s;
    out.reports.push_back(run_strategy(data, cfg, workers));
  }
  const auto* naive = out.find(Strategy::naive_cv_grid);
  const auto* nested = out.find(Strategy::nested_calibrated);
  if (naive && nested) {
    out.naive_minus_nested_ba = naive->metrics.at("ba").mean - nested->metrics.at("ba").mean;
  }
  return out;
}

}  // namespace ncv::protocol
