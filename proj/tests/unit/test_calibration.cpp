#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"

#include "ncv/calibration/holdout.hpp"
#include "ncv/calibration/platt.hpp"
#include "ncv/core/error.hpp"
#include "ncv/core/ledger.hpp"
#include "ncv/core/synthetic.hpp"
#include "ncv/core/view.hpp"
#include "ncv/metrics/metrics.hpp"

#include <cmath>
#include <random>

using namespace ncv;
using namespace ncv::calib;

TEST_CASE("platt targets") {
  const auto t = platt_targets(3, 8);
  CHECK(t.positive == doctest::Approx(0.8));
  CHECK(t.negative == doctest::Approx(0.1));
}

TEST_CASE("fit_platt: symmetric data calibrates 0 to one half") {
  const std::vector<double> s{-2, -1, -0.5, 0.5, 1, 2};
  const std::vector<int> y{0, 0, 1, 0, 1, 1};
  const auto cal = fit_platt(s, y);
  CHECK(cal.converged);
  CHECK(cal(0.0) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(cal.a < 0.0);
}

TEST_CASE("fit_platt: objective never increases and beats the flat start") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> z;
  for (int t = 0; t < 50; ++t) {
    std::vector<double> s(40);
    std::vector<int> y(40);
    for (int i = 0; i < 40; ++i) {
      y[i] = i % 3 == 0;
      s[i] = z(rng) + 0.8 * y[i];
    }
    const auto cal = fit_platt(s, y);
    CHECK(cal.nll <= platt_nll(s, y, 0.0, 0.0));
    CHECK(cal.nll == platt_nll(s, y, cal.a, cal.b));
    for (std::size_t k = 1; k < cal.nll_trace.size(); ++k) CHECK(cal.nll_trace[k] <= cal.nll_trace[k - 1]);
  }
}

TEST_CASE("fit_platt: separable scores stay finite") {
  const std::vector<double> s{0.1, 0.2, 0.8, 0.9};
  const std::vector<int> y{0, 0, 1, 1};
  const auto cal = fit_platt(s, y);
  CHECK(std::isfinite(cal.a));
  CHECK(std::isfinite(cal.b));
  for (double p : apply_calibrator(cal, s)) {
    CHECK(p > 0.0);
    CHECK(p < 1.0);
  }
  CHECK_THROWS_AS(fit_platt(std::vector<double>{0.1, 0.2}, std::vector<int>{1, 1}), FitError);
}

TEST_CASE("apply_calibrator: flat map and strict monotonicity") {
  SigmoidCalibrator flat;
  for (double p : apply_calibrator(flat, std::vector<double>{-3, 0, 0.2, 9})) CHECK(p == 0.5);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u;
  for (int t = 0; t < 50; ++t) {
    std::vector<double> s(30);
    std::vector<int> y(30);
    for (int i = 0; i < 30; ++i) {
      y[i] = i % 2;
      s[i] = std::round((u(rng) + 0.5 * y[i]) * 20) / 20;
    }
    const auto cal = fit_platt(s, y);
    REQUIRE(cal.a < 0.0);
    const auto p = apply_calibrator(cal, s);
    CHECK(metrics::roc_auc(y, p) == metrics::roc_auc(y, s));
  }
}

TEST_CASE("apply_calibrator: a fitted positive slope reverses the ranking") {
  // Scores that run against the labels; the likelihood optimum has a > 0.
  const std::vector<double> s{0.1, 0.3, 0.35, 0.6, 0.7, 0.9};
  const std::vector<int> y{1, 1, 0, 1, 0, 0};
  const auto cal = fit_platt(s, y);
  CHECK(cal.a > 0.0);
  const auto p = apply_calibrator(cal, s);
  CHECK(metrics::roc_auc(y, p) == 1.0 - metrics::roc_auc(y, s));
}

TEST_CASE("platt reduces ECE of squared probabilities over 20 seeds") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u;
    auto draw = [&](std::size_t n, std::vector<double>& s, std::vector<int>& y) {
      for (std::size_t i = 0; i < n; ++i) {
        const double p = u(rng);
        y.push_back(u(rng) < p);
        s.push_back(p * p);
      }
    };
    std::vector<double> fit_s, test_s;
    std::vector<int> fit_y, test_y;
    draw(1000, fit_s, fit_y);
    draw(2000, test_s, test_y);
    const auto cal = fit_platt(fit_s, fit_y);
    const double before = metrics::expected_calibration_error(test_y, test_s);
    const double after = metrics::expected_calibration_error(test_y, apply_calibrator(cal, test_s));
    CHECK(after < before);
  }
}

TEST_CASE("holdout_scores: leave-one-out never scores a row with itself") {
  // Each row's nearest other row carries the opposite label.
  const auto ds = test::column_dataset({0, 1, 10, 11, 20, 21}, {0, 1, 0, 1, 0, 1});
  learn::ModelSpec spec;
  spec.kind = learn::ModelKind::knn;
  spec.hyperparams = {{"n_neighbors", std::int64_t{1}}};
  const auto h = holdout_scores(data::SampleView::all(ds), spec, 6, 1);
  REQUIRE(h.scores.size() == 6);
  CHECK(h.labels == ds.labels());
  for (std::size_t i = 0; i < 6; ++i) CHECK(h.scores[i] == 1.0 - ds.labels()[i]);
}

TEST_CASE("holdout_scores: reads only the given rows, deterministically") {
  data::SyntheticSpec s;
  s.n = 60;
  s.p = 4;
  s.n_informative = 2;
  s.effect_size = 1.0;
  const auto ds = data::make_synthetic(s);
  data::AccessLedger ledger;
  data::AuditedData audited(ds, ledger);
  std::vector<std::size_t> train;
  for (std::size_t i = 0; i < 45; ++i) train.push_back(i);
  const auto view = audited.view(data::Stage::calibration, 0, train);
  learn::ModelSpec spec;
  spec.kind = learn::ModelKind::random_forest;
  spec.hyperparams = {{"n_estimators", std::int64_t{10}}};
  const auto a = holdout_scores(view, spec, 3, 5);
  const auto b = holdout_scores(view, spec, 3, 5);
  CHECK(a.scores == b.scores);
  CHECK(a.scores.size() == 45);
  REQUIRE(ledger.size() == 1);
  const auto entries = ledger.entries();
  for (auto i : entries[0].indices) CHECK(i < 45);

  const auto few = test::column_dataset({0, 1, 2, 3}, {0, 0, 0, 1});
  CHECK_THROWS_AS(holdout_scores(data::SampleView::all(few), spec, 4, 1), DataError);
}
