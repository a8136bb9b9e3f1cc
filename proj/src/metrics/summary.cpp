#include "ncv/metrics/summary.hpp"

#include "ncv/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ncv::metrics {
namespace {

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v, double mean) {
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

double quantile(std::span<const double> values, double q) {
  if (values.empty()) throw DataError("quantile: empty input");
  if (!(q >= 0.0 && q <= 1.0)) throw DataError("quantile: q must lie in [0, 1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

FoldSummary summarize_folds(std::span<const double> values) {
  if (values.size() < 2) throw DataError("summarize_folds: at least two values required");
  FoldSummary s;
  s.values.assign(values.begin(), values.end());
  s.mean = mean_of(values);
  s.sd = sample_sd(values, s.mean);
  s.median = quantile(values, 0.5);
  s.iqr = quantile(values, 0.75) - quantile(values, 0.25);
  return s;
}

RepeatSummary summarize_repeats(std::span<const double> values) {
  if (values.empty()) throw DataError("summarize_repeats: no values");
  RepeatSummary s;
  s.values.assign(values.begin(), values.end());
  s.mean = mean_of(values);
  s.median = quantile(values, 0.5);
  if (values.size() >= 2) {
    s.sd = sample_sd(values, s.mean);
    s.iqr = quantile(values, 0.75) - quantile(values, 0.25);
  }
  return s;
}

}  // namespace ncv::metrics
