#pragma once

#include <optional>
#include <span>
#include <vector>

namespace ncv::metrics {

// Per-fold values plus their spread. sd uses the n-1 denominator; quantiles
// interpolate linearly between order statistics.
struct FoldSummary {
  std::vector<double> values;
  double mean = 0.0;
  double sd = 0.0;
  double median = 0.0;
  double iqr = 0.0;  // Q3 - Q1
};

// Requires at least two values.
FoldSummary summarize_folds(std::span<const double> values);

// Linear-interpolation quantile of unsorted data, q in [0, 1].
double quantile(std::span<const double> values, double q);

// Same statistics for repeat counts that may be 1; spread is then absent.
struct RepeatSummary {
  std::vector<double> values;
  double mean = 0.0;
  double median = 0.0;
  std::optional<double> sd;
  std::optional<double> iqr;
};
RepeatSummary summarize_repeats(std::span<const double> values);

}  // namespace ncv::metrics
