#include "ncv/calibration/platt.hpp"

#include "ncv/core/error.hpp"

#include <algorithm>
#include <cmath>

namespace ncv::calib {

namespace {

constexpr double kGradTol = 1e-8;
constexpr int kMaxIter = 200;
constexpr double kMinStep = 1e-10;

// log(1 + exp(f)) without overflow.
double log1pexp(double f) { return f > 0.0 ? f + std::log1p(std::exp(-f)) : std::log1p(std::exp(f)); }

struct Counts {
  std::size_t pos = 0, neg = 0;
};

Counts count(std::span<const int> labels) {
  Counts c;
  for (int y : labels) (y == 1 ? c.pos : c.neg)++;
  return c;
}

double nll_with_targets(std::span<const double> s, std::span<const int> y, const PlattTargets& t,
                        double a, double b) {
  double f = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double z = a * s[i] + b;
    const double target = y[i] == 1 ? t.positive : t.negative;
    f += log1pexp(z) - (1.0 - target) * z;
  }
  return f;
}

}  // namespace

double SigmoidCalibrator::operator()(double score) const {
  const double z = a * score + b;
  // 1 / (1 + e^z), stable for either sign of z.
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

PlattTargets platt_targets(std::size_t n_positive, std::size_t n_negative) {
  return {(static_cast<double>(n_positive) + 1.0) / (static_cast<double>(n_positive) + 2.0),
          1.0 / (static_cast<double>(n_negative) + 2.0)};
}

double platt_nll(std::span<const double> scores, std::span<const int> labels, double a, double b) {
  const Counts c = count(labels);
  return nll_with_targets(scores, labels, platt_targets(c.pos, c.neg), a, b);
}

SigmoidCalibrator fit_platt(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw DataError("fit_platt: scores and labels differ in length");
  const Counts c = count(labels);
  if (c.pos == 0 || c.neg == 0) throw FitError("fit_platt: both classes required");
  for (double s : scores) {
    if (!std::isfinite(s)) throw DataError("fit_platt: non-finite score");
  }
  const PlattTargets t = platt_targets(c.pos, c.neg);

  SigmoidCalibrator cal;
  cal.a = 0.0;
  cal.b = std::log((static_cast<double>(c.neg) + 1.0) / (static_cast<double>(c.pos) + 1.0));
  double f = nll_with_targets(scores, labels, t, cal.a, cal.b);
  cal.nll_trace.push_back(f);
  cal.converged = false;

  for (int it = 0; it < kMaxIter; ++it) {
    // Gradient and Hessian of the NLL in (a, b).
    double ga = 0.0, gb = 0.0, haa = 1e-12, hab = 0.0, hbb = 1e-12;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      const double p = cal(scores[i]);
      const double target = labels[i] == 1 ? t.positive : t.negative;
      const double r = target - p;
      const double w = p * (1.0 - p);
      ga += scores[i] * r;
      gb += r;
      haa += scores[i] * scores[i] * w;
      hab += scores[i] * w;
      hbb += w;
    }
    if (std::max(std::abs(ga), std::abs(gb)) < kGradTol) {
      cal.converged = true;
      break;
    }
    const double det = haa * hbb - hab * hab;
    const double da = -(hbb * ga - hab * gb) / det;
    const double db = -(-hab * ga + haa * gb) / det;
    const double slope = ga * da + gb * db;

    double step = 1.0;
    bool accepted = false;
    while (step >= kMinStep) {
      const double na = cal.a + step * da, nb = cal.b + step * db;
      const double nf = nll_with_targets(scores, labels, t, na, nb);
      if (nf <= f + 1e-4 * step * slope) {
        cal.a = na;
        cal.b = nb;
        f = nf;
        accepted = true;
        break;
      }
      step /= 2.0;
    }
    cal.iterations = it + 1;
    if (!accepted) break;  // no further decrease possible; keep the best iterate
    cal.nll_trace.push_back(f);
  }
  cal.nll = f;
  return cal;
}

std::vector<double> apply_calibrator(const SigmoidCalibrator& cal, std::span<const double> scores) {
  std::vector<double> out(scores.size());
  std::transform(scores.begin(), scores.end(), out.begin(), [&](double s) { return cal(s); });
  return out;
}

}  // namespace ncv::calib
