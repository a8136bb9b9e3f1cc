#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"

#include "ncv/core/error.hpp"
#include "ncv/core/folds.hpp"
#include "ncv/core/synthetic.hpp"
#include "ncv/learners/grid.hpp"
#include "ncv/learners/model.hpp"
#include "ncv/metrics/metrics.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace ncv;
using namespace ncv::learn;
using data::SampleView;

namespace {

ModelSpec spec_of(ModelKind kind, HyperParams p = {}) {
  ModelSpec s;
  s.kind = kind;
  s.hyperparams = std::move(p);
  return s;
}

data::Dataset noisy(std::size_t n, std::size_t p, double effect, std::uint64_t seed) {
  data::SyntheticSpec s;
  s.n = n;
  s.p = p;
  s.n_informative = std::min<std::size_t>(p, 3);
  s.effect_size = effect;
  s.seed = seed;
  return data::make_synthetic(s);
}

}  // namespace

TEST_CASE("gini_impurity") {
  CHECK(gini_impurity(std::vector<std::size_t>{4, 0}) == 0.0);
  CHECK(gini_impurity(std::vector<std::size_t>{2, 2}) == 0.5);
  CHECK(gini_impurity(std::vector<std::size_t>{3, 1}) == doctest::Approx(0.375));
  CHECK(gini_impurity(std::vector<double>{1.5, 0.5}) == doctest::Approx(0.375));
  CHECK_THROWS(gini_impurity(std::vector<std::size_t>{0, 0}));
}

TEST_CASE("best_split") {
  Eigen::MatrixXd x(4, 2);
  x << 1, 7, 2, 7, 3, 7, 4, 7;
  const std::vector<int> y{0, 0, 1, 1};
  const std::vector<double> w(4, 1.0);
  const std::vector<std::size_t> rows{0, 1, 2, 3};
  const std::vector<std::size_t> first{0}, second{1};
  const auto s = best_split(x, y, w, rows, first, SplitMode::exhaustive, 0);
  REQUIRE(s.has_value());
  CHECK(s->threshold == 2.5);
  CHECK(s->impurity_decrease == doctest::Approx(0.5));
  CHECK_FALSE(best_split(x, y, w, rows, second, SplitMode::exhaustive, 0).has_value());
  CHECK_FALSE(best_split(x, y, w, rows, second, SplitMode::randomized, 0).has_value());

  const auto r1 = best_split(x, y, w, rows, first, SplitMode::randomized, 99);
  const auto r2 = best_split(x, y, w, rows, first, SplitMode::randomized, 99);
  REQUIRE(r1.has_value());
  CHECK(r1->threshold == r2->threshold);
  CHECK(r1->threshold > 1.0);
  CHECK(r1->threshold < 4.0);
}

TEST_CASE("fit_tree: separable data, depth limits") {
  const auto ds = test::column_dataset({1, 2, 3, 4, 5, 6, 7, 8}, {0, 0, 0, 1, 0, 1, 1, 1});
  const auto view = SampleView::all(ds);
  const auto full = fit_tree(view, spec_of(ModelKind::decision_tree));
  const auto scores = predict_scores(full, view);
  std::vector<int> pred;
  for (double s : scores) pred.push_back(s >= 0.5);
  CHECK(metrics::balanced_accuracy(ds.labels(), pred) == 1.0);
  REQUIRE(full.importances.has_value());
  CHECK((*full.importances)[0] == doctest::Approx(1.0));

  const auto stump = fit_tree(view, spec_of(ModelKind::decision_tree, {{"max_depth", std::int64_t{0}}}));
  for (double s : predict_scores(stump, view)) CHECK(s == 0.5);
  CHECK_FALSE(stump.importances.has_value());

  const auto leafy = fit_tree(view, spec_of(ModelKind::decision_tree, {{"min_samples_leaf", std::int64_t{8}}}));
  CHECK(predict_scores(leafy, view) == predict_scores(stump, view));
}

TEST_CASE("fit_tree: weighted base rate") {
  const auto ds = test::column_dataset({1, 2, 3, 4}, {1, 0, 0, 0});
  auto spec = spec_of(ModelKind::decision_tree, {{"max_depth", std::int64_t{0}}});
  spec.class_weighting = ClassWeighting::inverse_frequency;
  const auto m = fit_tree(SampleView::all(ds), spec);
  CHECK(predict_scores(m, SampleView::all(ds))[0] == doctest::Approx(0.5));
  CHECK(sample_weights(ds.labels(), ClassWeighting::inverse_frequency) ==
        std::vector<double>{2.0, 4.0 / 6.0, 4.0 / 6.0, 4.0 / 6.0});
}

TEST_CASE("fit_forest: one tree without bootstrap equals the decision tree") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto ds = noisy(80, 6, 1.0, seed);
    const auto view = SampleView::all(ds);
    const auto tree = fit_tree(view, spec_of(ModelKind::decision_tree));
    const auto forest = fit_forest(view, spec_of(ModelKind::random_forest, {{"n_estimators", std::int64_t{1}},
                                                                         {"bootstrap", false},
                                                                         {"max_features", std::string("all")}}));
    CHECK(predict_scores(tree, view) == predict_scores(forest, view));
    CHECK(*tree.importances == *forest.importances);
  }
}

TEST_CASE("fit_forest: identical trees give the common leaf value") {
  const auto ds = noisy(60, 4, 1.0, 3);
  const auto view = SampleView::all(ds);
  const auto tree = fit_tree(view, spec_of(ModelKind::decision_tree));
  const auto forest = fit_forest(view, spec_of(ModelKind::random_forest, {{"n_estimators", std::int64_t{7}},
                                                                       {"bootstrap", false},
                                                                       {"max_features", std::string("all")}}));
  const auto a = predict_scores(tree, view);
  const auto b = predict_scores(forest, view);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i] == doctest::Approx(a[i]).epsilon(1e-12));
}

TEST_CASE("class weighting on balanced data changes nothing") {
  const auto ds = noisy(60, 5, 1.0, 4);
  const auto view = SampleView::all(ds);
  for (auto kind : all_model_kinds()) {
    auto spec = spec_of(kind);
    if (kind == ModelKind::random_forest || kind == ModelKind::extra_trees) {
      spec.hyperparams["n_estimators"] = std::int64_t{10};
    }
    const auto a = predict_scores(fit_model(view, spec), view);
    spec.class_weighting = ClassWeighting::inverse_frequency;
    const auto b = predict_scores(fit_model(view, spec), view);
    CHECK_MESSAGE(a == b, to_string(kind));
  }
}

TEST_CASE("fit_forest: null data gives chance-level out-of-fold AUC") {
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto ds = noisy(200, 50, 0.0, 500 + seed);
    const auto plan = data::stratified_kfold(ds.labels(), 5, seed);
    std::vector<double> oof(ds.n_samples());
    const auto all = SampleView::all(ds);
    for (const auto& f : plan.folds) {
      const auto m = fit_forest(all.subset(f.train),
                                spec_of(ModelKind::random_forest, {{"n_estimators", std::int64_t{50}}}).with_seed(seed));
      const auto s = predict_scores(m, all.subset(f.test));
      for (std::size_t i = 0; i < f.test.size(); ++i) oof[f.test[i]] = s[i];
    }
    total += metrics::roc_auc(ds.labels(), oof);
  }
  CHECK(std::abs(total / 20.0 - 0.5) <= 0.05);
}

TEST_CASE("fit_forest: importances and errors") {
  const auto ds = noisy(100, 8, 2.0, 1);
  const auto view = SampleView::all(ds);
  for (auto kind : {ModelKind::random_forest, ModelKind::extra_trees}) {
    const auto m = fit_forest(view, spec_of(kind, {{"n_estimators", std::int64_t{20}}}));
    REQUIRE(m.importances.has_value());
    double sum = 0.0;
    for (double v : *m.importances) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK_THROWS_AS(fit_forest(view, spec_of(ModelKind::random_forest, {{"n_estimators", std::int64_t{0}}})),
                  ConfigError);
}

TEST_CASE("logistic: analytic gradient matches central differences") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> z;
  for (int t = 0; t < 30; ++t) {
    const Eigen::Index n = 5 + static_cast<Eigen::Index>(rng() % 10), p = 1 + static_cast<Eigen::Index>(rng() % 4);
    Eigen::MatrixXd x(n, p);
    Eigen::VectorXd y(n), w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < p; ++j) x(i, j) = z(rng);
      y(i) = static_cast<double>(rng() % 2);
      w(i) = 0.5 + static_cast<double>(rng() % 3);
    }
    const LogisticObjective f(x, y, w, 0.7);
    Eigen::VectorXd beta(p + 1);
    for (Eigen::Index j = 0; j <= p; ++j) beta(j) = z(rng);
    const auto g = f.gradient(beta);
    for (Eigen::Index j = 0; j <= p; ++j) {
      const double h = 1e-6;
      Eigen::VectorXd up = beta, down = beta;
      up(j) += h;
      down(j) -= h;
      const double fd = (f.value(up) - f.value(down)) / (2 * h);
      CHECK(std::abs(fd - g(j)) <= 1e-5 * std::max(1.0, std::abs(g(j))));
    }
  }
}

TEST_CASE("logistic: symmetry, sign and null model") {
  const auto sym = test::column_dataset({-2, -1, 1, 2, -0.5, 0.5}, {0, 0, 1, 1, 1, 0});
  const auto m = fit_logistic_regression(SampleView::all(sym), spec_of(ModelKind::logistic_regression));
  const auto& lm = std::get<LogisticModel>(m.state);
  CHECK(std::abs(lm.intercept) <= 1e-6);
  CHECK(m.converged);

  const auto sep = test::column_dataset({1, 2, 3, 4, 5, 6}, {1, 1, 1, 0, 0, 0});
  const auto s = fit_logistic_regression(SampleView::all(sep), spec_of(ModelKind::logistic_regression));
  CHECK(std::get<LogisticModel>(s.state).coef(0) < 0.0);

  LogisticModel null;
  null.coef = Eigen::VectorXd::Zero(3);
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(5, 3);
  for (double v : null.score(x)) CHECK(v == 0.5);
}

TEST_CASE("logistic: iteration cap is flagged, not fatal") {
  const auto ds = noisy(50, 3, 1.0, 2);
  const auto m = fit_logistic_regression(SampleView::all(ds),
                                         spec_of(ModelKind::logistic_regression, {{"max_iter", std::int64_t{1}}}));
  CHECK_FALSE(m.converged);
  for (double v : predict_scores(m, SampleView::all(ds))) CHECK(std::isfinite(v));
}

TEST_CASE("gaussian NB: closed-form boundary and uninformative features") {
  const auto ds = test::column_dataset({0, 2, 4, 6}, {0, 0, 1, 1});
  const auto m = fit_gaussian_nb(SampleView::all(ds), spec_of(ModelKind::gaussian_nb));
  const auto& nb = std::get<GaussianNbModel>(m.state);
  Eigen::MatrixXd q(3, 1);
  q << 2.9, 3.0, 3.1;
  const auto s = nb.score(q);
  CHECK(s[0] < 0.5);
  CHECK(s[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s[2] > 0.5);

  const auto flat = test::column_dataset({0, 1, 2, 0, 1, 2, 0, 1, 2}, {0, 0, 0, 1, 1, 1, 1, 1, 1});
  const auto f = fit_gaussian_nb(SampleView::all(flat), spec_of(ModelKind::gaussian_nb));
  Eigen::MatrixXd probe(4, 1);
  probe << -5, 0, 1.5, 40;
  for (double v : std::get<GaussianNbModel>(f.state).score(probe)) CHECK(v == doctest::Approx(2.0 / 3.0));

  Eigen::MatrixXd cx(4, 2);
  cx << 1, 3, 1, 4, 1, 8, 1, 9;
  const auto constant = test::make_dataset(cx, {0, 0, 1, 1});
  const auto c = fit_gaussian_nb(SampleView::all(constant), spec_of(ModelKind::gaussian_nb));
  for (double v : predict_scores(c, SampleView::all(constant))) CHECK(std::isfinite(v));
}

TEST_CASE("knn: counting, self-neighbor and affine invariance") {
  const auto ds = test::column_dataset({0, 1, 2, 10, 11, 12}, {1, 1, 0, 0, 1, 0});
  const auto view = SampleView::all(ds);
  const auto one = fit_knn(view, spec_of(ModelKind::knn, {{"n_neighbors", std::int64_t{1}}}));
  const auto s1 = predict_scores(one, view);
  for (std::size_t i = 0; i < s1.size(); ++i) CHECK(s1[i] == ds.labels()[i]);

  const auto three = fit_knn(view, spec_of(ModelKind::knn, {{"n_neighbors", std::int64_t{3}}}));
  Eigen::MatrixXd q(1, 1);
  q << 0.5;
  CHECK(predict_scores(three, ds.feature_names(), q)[0] == doctest::Approx(2.0 / 3.0));

  const auto base = noisy(40, 3, 1.0, 6);
  Eigen::MatrixXd scaled = base.features();
  scaled.col(1) = scaled.col(1) * 250.0 + Eigen::VectorXd::Constant(scaled.rows(), -13.0);
  const data::Dataset moved(base.feature_names(), scaled, base.labels(), base.subject_ids());
  const auto a = fit_knn(SampleView::all(base), spec_of(ModelKind::knn));
  const auto b = fit_knn(SampleView::all(moved), spec_of(ModelKind::knn));
  const auto sa = predict_scores(a, SampleView::all(base));
  const auto sb = predict_scores(b, SampleView::all(moved));
  for (std::size_t i = 0; i < sa.size(); ++i) CHECK(sa[i] == doctest::Approx(sb[i]));

  CHECK_THROWS_AS(fit_knn(view, spec_of(ModelKind::knn, {{"n_neighbors", std::int64_t{7}}})), FitError);
  CHECK_THROWS_AS(fit_knn(view, spec_of(ModelKind::knn, {{"n_neighbors", std::int64_t{0}}})), ConfigError);
}

TEST_CASE("knn: equidistant neighbors resolve to the lower row") {
  const auto ds = test::column_dataset({-1, 1, -3, 3}, {0, 1, 0, 1});
  const auto m = fit_knn(SampleView::all(ds), spec_of(ModelKind::knn, {{"n_neighbors", std::int64_t{1}}}));
  Eigen::MatrixXd q(1, 1);
  q << 0.0;
  // Mean 0, so query 0 stays exactly equidistant from rows 0 and 1.
  const auto& knn = std::get<KnnModel>(m.state);
  CHECK(knn.score(q)[0] == 0.0);
}

TEST_CASE("lda: direction matches a hand-solved 2x2 system") {
  Eigen::MatrixXd x(6, 2);
  x << 0.0, 1.0, 1.0, 0.5, 2.0, 2.5, 3.0, 3.5, 4.5, 3.0, 4.0, 5.0;
  const std::vector<int> y{0, 0, 0, 1, 1, 1};
  const auto ds = test::make_dataset(x, y);
  const auto m = fit_lda(SampleView::all(ds), spec_of(ModelKind::lda, {{"ridge", 0.0}}));
  const auto& lda = std::get<LdaModel>(m.state);

  double mu[2][2] = {{0, 0}, {0, 0}};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 2; ++j) mu[y[i]][j] += x(i, j) / 3.0;
  double s[2][2] = {{0, 0}, {0, 0}};
  for (int i = 0; i < 6; ++i)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) s[a][b] += (x(i, a) - mu[y[i]][a]) * (x(i, b) - mu[y[i]][b]) / 4.0;
  const double d0 = mu[1][0] - mu[0][0], d1 = mu[1][1] - mu[0][1];
  const double det = s[0][0] * s[1][1] - s[0][1] * s[1][0];
  const double w0 = (s[1][1] * d0 - s[0][1] * d1) / det;
  const double w1 = (s[0][0] * d1 - s[1][0] * d0) / det;
  CHECK(std::abs(lda.coef(0) - w0) <= 1e-8 * std::abs(w0));
  CHECK(std::abs(lda.coef(1) - w1) <= 1e-8 * std::abs(w1));
  const double b = -0.5 * ((mu[0][0] + mu[1][0]) * w0 + (mu[0][1] + mu[1][1]) * w1);
  CHECK(lda.intercept == doctest::Approx(b).epsilon(1e-8));
}

TEST_CASE("lda: spherical covariance and no separation") {
  Eigen::MatrixXd x(8, 2);
  x << -1, 0, 1, 0, 0, -1, 0, 1, 2, 3, 4, 3, 3, 2, 3, 4;
  const auto ds = test::make_dataset(x, {0, 0, 0, 0, 1, 1, 1, 1});
  const auto m = fit_lda(SampleView::all(ds), spec_of(ModelKind::lda));
  const auto& w = std::get<LdaModel>(m.state).coef;
  // mu1 - mu0 = (3, 3).
  CHECK(w(0) == doctest::Approx(w(1)).epsilon(1e-6));
  CHECK(w(0) > 0.0);

  Eigen::MatrixXd same(4, 1);
  same << 0, 2, 0, 2;
  const auto flat = fit_lda(SampleView::all(test::make_dataset(same, {0, 0, 1, 1})), spec_of(ModelKind::lda));
  const auto sc = predict_scores(flat, SampleView::all(test::make_dataset(same, {0, 0, 1, 1})));
  for (double v : sc) CHECK(v == doctest::Approx(sc[0]));
}

TEST_CASE("every model: finite scores in [0, 1], batch equals row-by-row, deterministic") {
  const auto ds = noisy(60, 5, 1.0, 9);
  const auto view = SampleView::all(ds);
  for (auto kind : all_model_kinds()) {
    auto spec = spec_of(kind);
    if (kind == ModelKind::random_forest || kind == ModelKind::extra_trees) {
      spec.hyperparams["n_estimators"] = std::int64_t{15};
    }
    const auto m = fit_model(view, spec);
    const auto batch = predict_scores(m, view);
    CHECK(batch == predict_scores(fit_model(view, spec), view));
    for (Eigen::Index i = 0; i < ds.features().rows(); ++i) {
      const double v = batch[static_cast<std::size_t>(i)];
      CHECK(std::isfinite(v));
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      const Eigen::MatrixXd row = ds.features().row(i);
      CHECK(predict_scores(m, ds.feature_names(), row)[0] == v);
    }
  }
}

TEST_CASE("fit errors: single class and column mismatch") {
  const auto one = test::column_dataset({1, 2, 3}, {1, 1, 1});
  for (auto kind : all_model_kinds()) {
    CHECK_THROWS_AS(fit_model(SampleView::all(one), spec_of(kind)), FitError);
  }
  const auto ds = noisy(30, 3, 1.0, 1);
  const auto m = fit_model(SampleView::all(ds), spec_of(ModelKind::lda));
  const auto other = noisy(30, 4, 1.0, 1);
  CHECK_THROWS_AS(predict_scores(m, SampleView::all(other)), DataError);
}

TEST_CASE("hyperparameter validation") {
  CHECK_THROWS_AS(validate_hyperparams(ModelKind::random_forest, {{"n_trees", std::int64_t{3}}}), ConfigError);
  CHECK_THROWS_AS(validate_hyperparams(ModelKind::logistic_regression, {{"C", -1.0}}), ConfigError);
  CHECK_THROWS_AS(validate_hyperparams(ModelKind::decision_tree, {{"max_depth", std::string("deep")}}),
                  ConfigError);
  CHECK_NOTHROW(validate_hyperparams(ModelKind::random_forest, {{"max_depth", std::monostate{}}}));
  CHECK_THROWS_AS(model_kind_from_string("svm"), ConfigError);
  const auto p = resolved_hyperparams(ModelKind::extra_trees, {});
  CHECK(std::get<bool>(p.at("bootstrap")) == false);
  CHECK(tree_params(spec_of(ModelKind::random_forest)).bootstrap);
  MaxFeatures mf{MaxFeatures::Rule::sqrt, 0.0};
  CHECK(mf.resolve(50) == 7);
}

TEST_CASE("default grids") {
  const auto rf = default_grid(ModelKind::random_forest);
  CHECK(rf.cardinality() == 144);
  CHECK(rf.enumerate().size() == 144);
  CHECK(rf.with_overrides({{"n_estimators", {std::int64_t{10}}}}).cardinality() == 48);
  const auto a = rf.enumerate(), b = default_grid(ModelKind::random_forest).enumerate();
  CHECK(a == b);
  // First name (max_depth) varies slowest, last (n_estimators) fastest.
  CHECK(std::holds_alternative<std::monostate>(a[0].at("max_depth")));
  CHECK(std::get<std::int64_t>(a[0].at("n_estimators")) == 100);
  CHECK(std::get<std::int64_t>(a[1].at("n_estimators")) == 200);
  for (auto kind : all_model_kinds()) CHECK_NOTHROW(validate_grid(kind, default_grid(kind)));
  CHECK_THROWS_AS(validate_grid(ModelKind::knn, HyperParamGrid({{"n_neighbors", {std::int64_t{0}}}})),
                  ConfigError);
}
