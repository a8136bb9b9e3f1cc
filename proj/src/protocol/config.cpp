#include "ncv/protocol/config.hpp"

#include "ncv/core/error.hpp"
#include "ncv/metrics/metrics.hpp"

#include <array>
#include <cmath>
#include <string>

namespace ncv::protocol {

namespace {

struct StrategyName {
  Strategy strategy;
  std::string_view key;
  std::string_view display;
};

constexpr std::array<StrategyName, 5> kNames{{
    {Strategy::holdout, "holdout", "Train/Test split"},
    {Strategy::holdout_grid, "holdout_grid", "Train/Test split + Grid Search CV"},
    {Strategy::naive_cv, "naive_cv", "Naive CV"},
    {Strategy::naive_cv_grid, "naive_cv_grid", "Naive CV + Grid Search"},
    {Strategy::nested_calibrated, "nested_calibrated", "Nested CV (calibrated)"},
}};

}  // namespace

std::string_view to_string(Strategy s) {
  for (const auto& n : kNames) {
    if (n.strategy == s) return n.key;
  }
  return "nested_calibrated";
}

std::string_view display_name(Strategy s) {
  for (const auto& n : kNames) {
    if (n.strategy == s) return n.display;
  }
  return "";
}

Strategy strategy_from_string(std::string_view name) {
  for (const auto& n : kNames) {
    if (n.key == name) return n.strategy;
  }
  throw ConfigError("unknown strategy '" + std::string(name) + "'");
}

const std::vector<Strategy>& all_strategies() {
  static const std::vector<Strategy> all{Strategy::holdout, Strategy::holdout_grid,
                                         Strategy::naive_cv, Strategy::naive_cv_grid,
                                         Strategy::nested_calibrated};
  return all;
}

std::vector<double> ProtocolConfig::thresholds() const {
  return threshold_grid.empty() ? metrics::default_threshold_grid() : threshold_grid;
}

bool ProtocolConfig::uses_grid() const {
  return strategy == Strategy::holdout_grid || strategy == Strategy::naive_cv_grid ||
         strategy == Strategy::nested_calibrated;
}

void ProtocolConfig::validate() const {
  if (outer_k < 2) throw ConfigError("outer_k must be at least 2");
  if (strategy == Strategy::nested_calibrated && inner_k < 2) {
    throw ConfigError("nested_calibrated requires inner_k >= 2");
  }
  if (strategy == Strategy::holdout_grid && inner_k < 2) {
    throw ConfigError("holdout_grid requires inner_k >= 2");
  }
  if ((strategy == Strategy::holdout || strategy == Strategy::holdout_grid) && repeats < 1) {
    throw ConfigError("hold-out strategies require repeats >= 1");
  }
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ConfigError("test_fraction must lie in (0, 1)");
  }
  for (double t : threshold_grid) {
    if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("threshold grid values must lie in [0, 1]");
  }
  if (!(fixed_threshold >= 0.0 && fixed_threshold <= 1.0)) {
    throw ConfigError("fixed_threshold must lie in [0, 1]");
  }
  if (ece_bins < 1) throw ConfigError("ece_bins must be at least 1");
  learn::validate_hyperparams(model.kind, model.hyperparams);
  if (!grid.empty()) learn::validate_grid(model.kind, grid);
}

}  // namespace ncv::protocol
