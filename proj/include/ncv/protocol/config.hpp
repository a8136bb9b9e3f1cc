#pragma once

#include "ncv/learners/grid.hpp"
#include "ncv/learners/model_spec.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace ncv::protocol {

enum class Strategy { holdout, holdout_grid, naive_cv, naive_cv_grid, nested_calibrated };

std::string_view to_string(Strategy s);
Strategy strategy_from_string(std::string_view name);
const std::vector<Strategy>& all_strategies();
// Human-readable row label ("Nested CV (calibrated)", ...).
std::string_view display_name(Strategy s);

struct ProtocolConfig {
  Strategy strategy = Strategy::nested_calibrated;
  int outer_k = 5;
  int inner_k = 3;
  int repeats = 20;              // hold-out strategies
  double test_fraction = 0.2;    // hold-out strategies
  learn::ModelSpec model;
  // Empty grid: the model's own hyperparameters are used without tuning.
  learn::HyperParamGrid grid;
  std::vector<double> threshold_grid;  // empty means 0.01..0.99
  // Platt step of the nested pathway; off reproduces uncalibrated results.
  bool calibrate = true;
  double fixed_threshold = 0.5;  // hold-out strategies
  int ece_bins = 10;
  std::uint64_t seed = 42;

  // Throws ConfigError.
  void validate() const;
  std::vector<double> thresholds() const;
  bool uses_grid() const;
};

}  // namespace ncv::protocol
