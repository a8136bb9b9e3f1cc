#include "ncv/core/synthetic.hpp"

#include "ncv/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace ncv::data {

Dataset make_synthetic(const SyntheticSpec& spec) {
  if (spec.n == 0 || spec.p == 0) throw DataError("synthetic: n and p must be positive");
  if (spec.n_informative > spec.p) throw DataError("synthetic: n_informative exceeds p");
  if (!(spec.positive_fraction > 0.0 && spec.positive_fraction < 1.0)) {
    throw DataError("synthetic: positive_fraction must lie in (0, 1)");
  }
  if (!std::isfinite(spec.effect_size)) throw DataError("synthetic: effect_size must be finite");

  std::mt19937_64 rng(spec.seed);
  const auto n_pos = static_cast<std::size_t>(
      std::llround(static_cast<double>(spec.n) * spec.positive_fraction));
  std::vector<int> labels(spec.n, 0);
  std::fill_n(labels.begin(), n_pos, 1);
  std::shuffle(labels.begin(), labels.end(), rng);

  std::normal_distribution<double> noise(0.0, 1.0);
  const double half = spec.effect_size / 2.0;
  Eigen::MatrixXd x(static_cast<Eigen::Index>(spec.n), static_cast<Eigen::Index>(spec.p));
  for (std::size_t i = 0; i < spec.n; ++i) {
    const double shift = labels[i] == 1 ? half : -half;
    for (std::size_t j = 0; j < spec.p; ++j) {
      double v = noise(rng);
      if (j < spec.n_informative) v += shift;
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }

  std::vector<std::string> names;
  names.reserve(spec.p);
  char buf[32];
  for (std::size_t j = 0; j < spec.p; ++j) {
    std::snprintf(buf, sizeof buf, "x%03zu", j);
    names.emplace_back(buf);
  }
  std::vector<std::string> ids;
  ids.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    std::snprintf(buf, sizeof buf, "syn%05zu", i);
    ids.emplace_back(buf);
  }
  return Dataset(std::move(names), std::move(x), std::move(labels), std::move(ids));
}

}  // namespace ncv::data
