#pragma once

#include <span>
#include <vector>

namespace ncv::calib {

// p(s) = 1 / (1 + exp(a s + b)).
struct SigmoidCalibrator {
  double a = 0.0;
  double b = 0.0;
  double nll = 0.0;
  int iterations = 0;
  bool converged = true;
  // Objective after each accepted step, starting with the initializer.
  std::vector<double> nll_trace;

  double operator()(double score) const;
};

struct PlattTargets {
  double positive;  // (N+ + 1) / (N+ + 2)
  double negative;  // 1 / (N- + 2)
};
PlattTargets platt_targets(std::size_t n_positive, std::size_t n_negative);

// Negative log-likelihood of the smoothed targets under (a, b).
double platt_nll(std::span<const double> scores, std::span<const int> labels, double a, double b);

// Damped Newton (step halving) from a = 0, b = log((N- + 1) / (N+ + 1)) until
// the gradient infinity-norm is below 1e-8 or 200 iterations. Throws
// FitError unless both classes are present.
SigmoidCalibrator fit_platt(std::span<const double> scores, std::span<const int> labels);

std::vector<double> apply_calibrator(const SigmoidCalibrator& cal, std::span<const double> scores);

}  // namespace ncv::calib
