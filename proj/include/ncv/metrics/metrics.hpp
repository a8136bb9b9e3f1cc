#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ncv::metrics {

struct ThresholdedOutcome {
  double threshold = 0.5;
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  double tpr = 0.0, tnr = 0.0;
  double balanced_accuracy = 0.0;
};

// Confusion counts with the rule "predict positive iff probability >= threshold".
ThresholdedOutcome evaluate_threshold(std::span<const int> labels,
                                      std::span<const double> probabilities, double threshold);

// (TPR + TNR) / 2 over hard 0/1 predictions. Both classes must be present.
double balanced_accuracy(std::span<const int> labels, std::span<const int> predictions);

// 0.01, 0.02, ..., 0.99 (each point computed as i/100).
std::vector<double> default_threshold_grid();

struct ThresholdSweep {
  double t_star = 0.5;
  ThresholdedOutcome outcome;
};

// Evaluates BA at every grid point and returns the maximizer. Ties go to the
// threshold nearest 0.5, then to the smaller one. Scores are never flipped.
ThresholdSweep sweep_threshold(std::span<const int> labels, std::span<const double> probabilities,
                               std::span<const double> grid);

// Mann-Whitney AUC: P(score of random positive > random negative), ties 1/2.
double roc_auc(std::span<const int> labels, std::span<const double> scores);

// Step-wise average precision over descending scores, ties broken by lower
// index: sum over positive ranks of precision@rank / n_positive.
double average_precision(std::span<const int> labels, std::span<const double> scores);

double brier_score(std::span<const int> labels, std::span<const double> probabilities);

// Equal-width right-closed bins ((b-1)/B, b/B], p = 0 falls in the first bin;
// empty bins are skipped.
double expected_calibration_error(std::span<const int> labels,
                                  std::span<const double> probabilities, int n_bins = 10);

struct ReliabilityBin {
  double lower = 0.0, upper = 0.0;
  std::size_t count = 0;
  double mean_confidence = 0.0;
  double positive_rate = 0.0;
};
std::vector<ReliabilityBin> reliability_bins(std::span<const int> labels,
                                             std::span<const double> probabilities,
                                             int n_bins = 10);

struct RocPoint {
  double threshold = 0.0;
  double fpr = 0.0;
  double tpr = 0.0;
};
// One point per distinct score (descending), starting at (0, 0).
std::vector<RocPoint> roc_curve(std::span<const int> labels, std::span<const double> scores);

}  // namespace ncv::metrics
