#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"

#include "ncv/core/error.hpp"
#include "ncv/metrics/metrics.hpp"
#include "ncv/metrics/summary.hpp"

#include <cmath>
#include <random>

using namespace ncv;
using namespace ncv::metrics;
using V = std::vector<double>;
using L = std::vector<int>;

TEST_CASE("balanced_accuracy") {
  CHECK(balanced_accuracy(L{1, 0, 1, 0}, L{1, 0, 1, 0}) == 1.0);
  CHECK(balanced_accuracy(L{1, 0, 1, 0, 0}, L{1, 1, 1, 1, 1}) == 0.5);
  CHECK(balanced_accuracy(L{1, 1, 1, 0, 0}, L{1, 1, 0, 0, 1}) == doctest::Approx(7.0 / 12.0));
  CHECK_THROWS_AS(balanced_accuracy(L{1, 1}, L{1, 0}), DataError);
}

TEST_CASE("balanced_accuracy is class symmetric") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    L y(10), p(10), yf(10), pf(10);
    for (int i = 0; i < 10; ++i) {
      y[i] = i < 5 ? 1 : static_cast<int>(rng() % 2);
      if (i == 9) y[i] = 0;
      p[i] = static_cast<int>(rng() % 2);
      yf[i] = 1 - y[i];
      pf[i] = 1 - p[i];
    }
    CHECK(balanced_accuracy(y, p) == balanced_accuracy(yf, pf));
    CHECK(balanced_accuracy(y, p) == doctest::Approx(test::oracle::balanced_accuracy(y, p)));
  }
}

TEST_CASE("evaluate_threshold: confusion bookkeeping") {
  const L y{1, 1, 0, 0, 1};
  const V p{0.9, 0.5, 0.5, 0.1, 0.2};
  const auto o = evaluate_threshold(y, p, 0.5);
  CHECK(o.tp == 2);
  CHECK(o.fn == 1);
  CHECK(o.fp == 1);
  CHECK(o.tn == 1);
  CHECK(o.tp + o.fn == 3);
  CHECK(o.balanced_accuracy == doctest::Approx((2.0 / 3.0 + 0.5) / 2.0));
}

TEST_CASE("default threshold grid") {
  const auto g = default_threshold_grid();
  REQUIRE(g.size() == 99);
  CHECK(g.front() == 0.01);
  CHECK(g[49] == 0.5);
  CHECK(g.back() == 0.99);
}

TEST_CASE("sweep_threshold: separable scores resolve to 0.50") {
  const auto g = default_threshold_grid();
  const auto s = sweep_threshold(L{0, 0, 1, 1}, V{0.2, 0.4, 0.6, 0.8}, g);
  CHECK(s.outcome.balanced_accuracy == 1.0);
  CHECK(s.t_star == 0.5);
}

TEST_CASE("sweep_threshold: constant scores tie everywhere") {
  const auto g = default_threshold_grid();
  const auto s = sweep_threshold(L{0, 1, 0, 1}, V{0.3, 0.3, 0.3, 0.3}, g);
  CHECK(s.outcome.balanced_accuracy == 0.5);
  CHECK(s.t_star == 0.5);
}

TEST_CASE("sweep_threshold: inverted labels are not flipped") {
  const auto g = default_threshold_grid();
  const L y{1, 1, 0, 0};
  const V p{0.2, 0.4, 0.6, 0.8};
  // Interior thresholds score below chance; only the trivial all-one-class
  // cutoffs reach 0.5, and 0.20 is the one nearest 0.5.
  CHECK(evaluate_threshold(y, p, 0.5).balanced_accuracy == 0.0);
  const auto s = sweep_threshold(y, p, g);
  CHECK(s.outcome.balanced_accuracy == 0.5);
  CHECK(s.t_star == 0.2);
  CHECK(s.outcome.balanced_accuracy < 1.0);
}

TEST_CASE("sweep_threshold: BA at t* dominates BA at 0.5") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto g = default_threshold_grid();
  for (int t = 0; t < 300; ++t) {
    L y(30);
    V p(30);
    for (int i = 0; i < 30; ++i) {
      y[i] = i % 3 == 0;
      p[i] = u(rng);
    }
    const auto s = sweep_threshold(y, p, g);
    CHECK(s.outcome.balanced_accuracy >= evaluate_threshold(y, p, 0.5).balanced_accuracy);
  }
  CHECK_THROWS_AS(sweep_threshold(L{0, 1}, V{0.1, 0.9}, V{}), DataError);
}

TEST_CASE("roc_auc") {
  CHECK(roc_auc(L{0, 0, 1, 1}, V{0.1, 0.2, 0.8, 0.9}) == 1.0);
  CHECK(roc_auc(L{0, 0, 1, 1}, V{0.1, 0.4, 0.35, 0.8}) == 0.75);
  CHECK(roc_auc(L{0, 1, 0, 1}, V{0.5, 0.5, 0.5, 0.5}) == 0.5);
  CHECK_THROWS_AS(roc_auc(L{1, 1}, V{0.1, 0.2}), DataError);
}

TEST_CASE("roc_auc is invariant under increasing transforms") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> z;
  for (int t = 0; t < 100; ++t) {
    L y(25);
    V s(25), ts(25);
    for (int i = 0; i < 25; ++i) {
      y[i] = i % 2;
      s[i] = std::round(z(rng) * 4) / 4;
      ts[i] = std::exp(3 * s[i]) + 7;
    }
    CHECK(roc_auc(y, s) == roc_auc(y, ts));
  }
}

TEST_CASE("average_precision") {
  CHECK(average_precision(L{1, 1, 0, 0}, V{0.9, 0.8, 0.2, 0.1}) == 1.0);
  CHECK(average_precision(L{0, 1}, V{0.9, 0.1}) == 0.5);
  CHECK(average_precision(L{1, 1, 1}, V{0.1, 0.7, 0.3}) == 1.0);
  CHECK_THROWS_AS(average_precision(L{0, 0}, V{0.1, 0.2}), DataError);
}

TEST_CASE("ranking metrics agree with brute-force oracles for n <= 12") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + rng() % 11;
    L y(n);
    V s(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = static_cast<int>(rng() % 2);
      s[i] = static_cast<double>(rng() % 6) / 5.0;
    }
    y[0] = 1;
    y[1] = 0;
    CHECK(roc_auc(y, s) == test::oracle::auc(y, s));
    CHECK(average_precision(y, s) == doctest::Approx(test::oracle::average_precision(y, s)).epsilon(1e-15));
  }
}

TEST_CASE("brier_score") {
  CHECK(brier_score(L{1, 0}, V{1.0, 0.0}) == 0.0);
  CHECK(brier_score(L{1, 0, 1}, V{0.5, 0.5, 0.5}) == 0.25);
  CHECK(brier_score(L{1, 0}, V{0.8, 0.4}) == doctest::Approx(0.10));
  CHECK_THROWS_AS(brier_score(L{1}, V{1.5}), DataError);
}

TEST_CASE("expected_calibration_error") {
  L y(10, 0);
  for (int i = 0; i < 8; ++i) y[i] = 1;
  CHECK(expected_calibration_error(y, V(10, 0.8)) == doctest::Approx(0.0));
  CHECK(expected_calibration_error(L{1, 0, 1, 0}, V(4, 1.0)) == 0.5);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u;
  for (int t = 0; t < 50; ++t) {
    L yy(17);
    V p(17);
    double mp = 0, my = 0;
    for (int i = 0; i < 17; ++i) {
      yy[i] = u(rng) < 0.4;
      p[i] = u(rng);
      mp += p[i] / 17;
      my += yy[i] / 17.0;
    }
    CHECK(expected_calibration_error(yy, p, 1) == doctest::Approx(std::abs(mp - my)).epsilon(1e-12));
  }
}

TEST_CASE("reliability bins: right-closed, zero in the first bin") {
  const auto bins = reliability_bins(L{0, 1, 1, 0}, V{0.0, 0.1, 0.15, 1.0}, 10);
  REQUIRE(bins.size() == 3);
  CHECK(bins[0].count == 2);
  CHECK(bins[0].upper == doctest::Approx(0.1));
  CHECK(bins[1].count == 1);
  CHECK(bins[2].count == 1);
  CHECK(bins[2].upper == doctest::Approx(1.0));
}

TEST_CASE("roc_curve starts at the origin and ends at (1, 1)") {
  const auto pts = roc_curve(L{0, 1, 0, 1}, V{0.1, 0.9, 0.4, 0.4});
  REQUIRE(pts.size() == 4);
  CHECK(pts.front().fpr == 0.0);
  CHECK(pts.front().tpr == 0.0);
  CHECK(pts.back().fpr == 1.0);
  CHECK(pts.back().tpr == 1.0);
  CHECK(pts[2].fpr == 0.5);
  CHECK(pts[2].tpr == 1.0);
}

TEST_CASE("summarize_folds: published fold thresholds and BAs") {
  const auto t = summarize_folds(V{0.40, 0.40, 0.39, 0.39, 0.39});
  CHECK(std::round(t.median * 100) / 100 == doctest::Approx(0.39));
  CHECK(std::round(t.iqr * 100) / 100 == doctest::Approx(0.01));
  const auto b = summarize_folds(V{0.67, 0.66, 0.66, 0.68, 0.62});
  CHECK(std::round(b.median * 100) / 100 == doctest::Approx(0.66));
  CHECK(std::round(b.iqr * 100) / 100 == doctest::Approx(0.01));
  CHECK(b.mean == doctest::Approx(0.658));
}

TEST_CASE("summarize_folds: spread conventions") {
  const auto c = summarize_folds(V{0.3, 0.3, 0.3});
  CHECK(c.sd == 0.0);
  CHECK(c.iqr == 0.0);
  const auto s = summarize_folds(V{1, 2, 3, 4});
  CHECK(s.sd == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(s.median == 2.5);
  CHECK(s.iqr == doctest::Approx(3.25 - 1.75));
  CHECK(quantile(V{4, 1, 3, 2}, 0.25) == doctest::Approx(1.75));
  CHECK_THROWS_AS(summarize_folds(V{1.0}), DataError);
}

TEST_CASE("summarize_repeats: single value has no spread") {
  const auto r = summarize_repeats(V{0.7});
  CHECK(r.mean == 0.7);
  CHECK_FALSE(r.sd.has_value());
  CHECK_FALSE(r.iqr.has_value());
  const auto two = summarize_repeats(V{0.6, 0.8});
  REQUIRE(two.sd.has_value());
  CHECK(*two.sd == doctest::Approx(std::sqrt(0.02)));
}
