#include "ncv/metrics/metrics.hpp"

#include "ncv/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace ncv::metrics {
namespace {

constexpr double kTieTolerance = 1e-12;

void check_sizes(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw DataError(std::string(what) + ": labels and scores differ in length");
  if (a == 0) throw DataError(std::string(what) + ": empty input");
}

std::pair<std::size_t, std::size_t> class_counts(std::span<const int> labels, const char* what) {
  std::size_t pos = 0;
  for (int y : labels) {
    if (y != 0 && y != 1) throw DataError(std::string(what) + ": labels must be 0 or 1");
    pos += static_cast<std::size_t>(y);
  }
  return {pos, labels.size() - pos};
}

void require_both(std::pair<std::size_t, std::size_t> counts, const char* what) {
  if (counts.first == 0 || counts.second == 0) {
    throw DataError(std::string(what) + ": both classes must be present");
  }
}

void check_probabilities(std::span<const double> p, const char* what) {
  for (double v : p) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw DataError(std::string(what) + ": probabilities must lie in [0, 1]");
    }
  }
}

// Positions sorted by descending score, ties by ascending index.
std::vector<std::size_t> descending_order(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

}  // namespace

ThresholdedOutcome evaluate_threshold(std::span<const int> labels,
                                      std::span<const double> probabilities, double threshold) {
  check_sizes(labels.size(), probabilities.size(), "evaluate_threshold");
  const auto counts = class_counts(labels, "evaluate_threshold");
  require_both(counts, "evaluate_threshold");
  ThresholdedOutcome out;
  out.threshold = threshold;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool predicted = probabilities[i] >= threshold;
    if (labels[i] == 1) {
      predicted ? ++out.tp : ++out.fn;
    } else {
      predicted ? ++out.fp : ++out.tn;
    }
  }
  out.tpr = static_cast<double>(out.tp) / static_cast<double>(counts.first);
  out.tnr = static_cast<double>(out.tn) / static_cast<double>(counts.second);
  out.balanced_accuracy = (out.tpr + out.tnr) / 2.0;
  return out;
}

double balanced_accuracy(std::span<const int> labels, std::span<const int> predictions) {
  check_sizes(labels.size(), predictions.size(), "balanced_accuracy");
  const auto counts = class_counts(labels, "balanced_accuracy");
  require_both(counts, "balanced_accuracy");
  std::size_t tp = 0, tn = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (predictions[i] != 0 && predictions[i] != 1) {
      throw DataError("balanced_accuracy: predictions must be 0 or 1");
    }
    if (labels[i] == 1 && predictions[i] == 1) ++tp;
    if (labels[i] == 0 && predictions[i] == 0) ++tn;
  }
  const double tpr = static_cast<double>(tp) / static_cast<double>(counts.first);
  const double tnr = static_cast<double>(tn) / static_cast<double>(counts.second);
  return (tpr + tnr) / 2.0;
}

std::vector<double> default_threshold_grid() {
  std::vector<double> grid;
  grid.reserve(99);
  for (int i = 1; i <= 99; ++i) grid.push_back(i / 100.0);
  return grid;
}

ThresholdSweep sweep_threshold(std::span<const int> labels, std::span<const double> probabilities,
                               std::span<const double> grid) {
  if (grid.empty()) throw DataError("sweep_threshold: empty threshold grid");
  check_probabilities(probabilities, "sweep_threshold");
  std::optional<ThresholdSweep> best;
  for (double t : grid) {
    auto outcome = evaluate_threshold(labels, probabilities, t);
    if (!best) {
      best = ThresholdSweep{t, outcome};
      continue;
    }
    const double gain = outcome.balanced_accuracy - best->outcome.balanced_accuracy;
    bool take = gain > kTieTolerance;
    if (!take && std::abs(gain) <= kTieTolerance) {
      const double d_new = std::abs(t - 0.5);
      const double d_old = std::abs(best->t_star - 0.5);
      if (d_new < d_old - kTieTolerance) {
        take = true;
      } else if (std::abs(d_new - d_old) <= kTieTolerance) {
        take = t < best->t_star;
      }
    }
    if (take) best = ThresholdSweep{t, outcome};
  }
  return *best;
}

double roc_auc(std::span<const int> labels, std::span<const double> scores) {
  check_sizes(labels.size(), scores.size(), "roc_auc");
  const auto counts = class_counts(labels, "roc_auc");
  require_both(counts, "roc_auc");
  // Average ranks (1-based) over tie groups in ascending score order.
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double positive_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
    // Ranks i+1 .. j+1 share the average (i + j + 2) / 2.
    const double avg_rank = static_cast<double>(i + j + 2) / 2.0;
    for (std::size_t t = i; t <= j; ++t) {
      if (labels[order[t]] == 1) positive_rank_sum += avg_rank;
    }
    i = j + 1;
  }
  const double pos = static_cast<double>(counts.first);
  const double neg = static_cast<double>(counts.second);
  const double u = positive_rank_sum - pos * (pos + 1.0) / 2.0;
  return u / (pos * neg);
}

double average_precision(std::span<const int> labels, std::span<const double> scores) {
  check_sizes(labels.size(), scores.size(), "average_precision");
  const auto counts = class_counts(labels, "average_precision");
  if (counts.first == 0) throw DataError("average_precision: no positive labels");
  double precision_sum = 0.0;
  std::size_t hits = 0;
  std::size_t rank = 0;
  for (std::size_t idx : descending_order(scores)) {
    ++rank;
    if (labels[idx] == 1) {
      ++hits;
      precision_sum += static_cast<double>(hits) / static_cast<double>(rank);
    }
  }
  return precision_sum / static_cast<double>(counts.first);
}

double brier_score(std::span<const int> labels, std::span<const double> probabilities) {
  check_sizes(labels.size(), probabilities.size(), "brier_score");
  class_counts(labels, "brier_score");
  check_probabilities(probabilities, "brier_score");
  double sum = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double d = probabilities[i] - labels[i];
    sum += d * d;
  }
  return sum / static_cast<double>(labels.size());
}

std::vector<ReliabilityBin> reliability_bins(std::span<const int> labels,
                                             std::span<const double> probabilities, int n_bins) {
  check_sizes(labels.size(), probabilities.size(), "reliability_bins");
  class_counts(labels, "reliability_bins");
  check_probabilities(probabilities, "reliability_bins");
  if (n_bins < 1) throw DataError("reliability_bins: n_bins must be at least 1");
  const auto bins = static_cast<std::size_t>(n_bins);
  std::vector<double> conf_sum(bins, 0.0), pos_sum(bins, 0.0);
  std::vector<std::size_t> count(bins, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double scaled = std::ceil(probabilities[i] * n_bins) - 1.0;
    const auto b = static_cast<std::size_t>(std::clamp(scaled, 0.0, static_cast<double>(n_bins - 1)));
    conf_sum[b] += probabilities[i];
    pos_sum[b] += labels[i];
    ++count[b];
  }
  std::vector<ReliabilityBin> out;
  for (std::size_t b = 0; b < bins; ++b) {
    if (count[b] == 0) continue;
    const double c = static_cast<double>(count[b]);
    out.push_back({static_cast<double>(b) / n_bins, static_cast<double>(b + 1) / n_bins, count[b],
                   conf_sum[b] / c, pos_sum[b] / c});
  }
  return out;
}

double expected_calibration_error(std::span<const int> labels,
                                  std::span<const double> probabilities, int n_bins) {
  const double n = static_cast<double>(labels.size());
  double ece = 0.0;
  for (const auto& bin : reliability_bins(labels, probabilities, n_bins)) {
    ece += static_cast<double>(bin.count) / n * std::abs(bin.mean_confidence - bin.positive_rate);
  }
  return ece;
}

std::vector<RocPoint> roc_curve(std::span<const int> labels, std::span<const double> scores) {
  check_sizes(labels.size(), scores.size(), "roc_curve");
  const auto counts = class_counts(labels, "roc_curve");
  require_both(counts, "roc_curve");
  const auto order = descending_order(scores);
  std::vector<RocPoint> curve;
  curve.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    labels[order[i]] == 1 ? ++tp : ++fp;
    const bool group_end = i + 1 == order.size() || scores[order[i + 1]] != scores[order[i]];
    if (group_end) {
      curve.push_back({scores[order[i]], static_cast<double>(fp) / counts.second,
                       static_cast<double>(tp) / counts.first});
    }
  }
  return curve;
}

}  // namespace ncv::metrics
