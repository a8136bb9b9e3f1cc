#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"

#include "ncv/core/error.hpp"
#include "ncv/features/engineering.hpp"
#include "ncv/features/registry.hpp"
#include "ncv/features/synthetic_volumes.hpp"
#include "ncv/features/volume_table.hpp"

#include <algorithm>
#include <cmath>
#include <map>

using namespace ncv;
using namespace ncv::features;

namespace {

// One subject per entry of each region's value list.
RegionalVolumeTable table_of(const std::vector<std::pair<std::string, std::vector<double>>>& cols,
                             std::vector<double> tiv, std::optional<std::vector<double>> age = {}) {
  const auto n = static_cast<Eigen::Index>(tiv.size());
  Eigen::MatrixXd v(n, static_cast<Eigen::Index>(cols.size()));
  std::vector<std::string> regions;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    regions.push_back(cols[j].first);
    for (Eigen::Index i = 0; i < n; ++i) v(i, static_cast<Eigen::Index>(j)) = cols[j].second[i];
  }
  std::vector<std::string> ids;
  std::vector<int> labels;
  for (Eigen::Index i = 0; i < n; ++i) {
    ids.push_back("s" + std::to_string(i));
    labels.push_back(static_cast<int>(i % 2));
  }
  return RegionalVolumeTable(ids, regions, v, std::move(tiv), std::move(age), labels);
}

// Every fixture region at value v for one subject.
RegionalVolumeTable uniform_fixture(double v, double tiv) {
  std::vector<std::pair<std::string, std::vector<double>>> cols;
  for (const auto& r : test::fixture_regions()) cols.push_back({r, {v}});
  return table_of(cols, {tiv});
}

const Column& named(const Columns& cols, const std::string& name) {
  auto it = std::find_if(cols.begin(), cols.end(), [&](const Column& c) { return c.name == name; });
  REQUIRE(it != cols.end());
  return *it;
}

}  // namespace

TEST_CASE("registry: default mapping") {
  const auto& reg = RegionRegistry::default_registry();
  const auto* para = reg.find("ctx-lh-paracentral");
  REQUIRE(para != nullptr);
  CHECK(para->lobe == "frontal");
  CHECK(para->hemisphere == Hemisphere::left);
  CHECK(para->partner == "ctx-rh-paracentral");
  const auto deep = reg.members(Tissue::deep_gray);
  CHECK(deep.size() == 10);
  for (const char* s : {"thalamus", "caudate", "putamen", "pallidum", "accumbens area"}) {
    CHECK(std::find(deep.begin(), deep.end(), std::string("left ") + s) != deep.end());
    CHECK(std::find(deep.begin(), deep.end(), std::string("right ") + s) != deep.end());
  }
  CHECK(reg.find("left hippocampus")->tissue == Tissue::gray);
  CHECK(reg.members(Tissue::ventricle).size() == 6);
  for (const auto& info : reg.regions()) {
    if (info.region.starts_with("ctx-")) CHECK_FALSE(info.lobe.empty());
  }
  CHECK(hemisphere_of("right putamen") == Hemisphere::right);
  CHECK(hemisphere_of("ctx-rh-insula") == Hemisphere::right);
  CHECK(hemisphere_of("3rd ventricle") == Hemisphere::none);
}

TEST_CASE("registry: parse errors") {
  const std::string header = "region\tpair\ttissue\tlobe\n";
  CHECK_THROWS_AS(RegionRegistry::parse("region\tpair\n"), ConfigError);
  CHECK_THROWS_AS(RegionRegistry::parse(header + "a\t-\tgray\t-\na\t-\tgray\t-\n"), ConfigError);
  CHECK_THROWS_AS(RegionRegistry::parse(header + "a\t-\tbone\t-\n"), ConfigError);
  CHECK_THROWS_AS(RegionRegistry::parse(header + "ctx-lh-x\t-\tgray\tnose\n"), ConfigError);
  CHECK_THROWS_AS(RegionRegistry::parse(header + "left a\tright a\tgray\t-\nright a\t-\tgray\t-\n"),
                  ConfigError);
  const auto ok = RegionRegistry::parse(header + "# comment\nleft a\tright a\tgray\t-\nright a\tleft a\tgray\t-\n");
  CHECK(ok.pairs() == std::vector<std::pair<std::string, std::string>>{{"left a", "right a"}});
}

TEST_CASE("volume table: invariants") {
  CHECK_THROWS_AS(table_of({{"a", {-1.0}}}, {100.0}), DataError);
  CHECK_THROWS_AS(table_of({{"a", {std::nan("")}}}, {100.0}), DataError);
  const auto t = table_of({{"a", {1.0}}}, {100.0});
  CHECK(t.has_region("a"));
  CHECK_THROWS_AS(t.region("b"), ConfigError);
}

TEST_CASE("tiv_fractions") {
  const auto t = table_of({{"left lateral ventricle", {50.0, 0.0}}}, {1000.0, 1000.0});
  const auto cols = tiv_fractions(t);
  REQUIRE(cols.size() == 1);
  CHECK(cols[0].name == "left lateral ventricle_fracs");
  CHECK(cols[0].values[0] == doctest::Approx(0.05));
  CHECK(cols[0].values[1] == 0.0);
}

TEST_CASE("tiv_fractions: nonpositive tiv rejects the subject") {
  const auto& reg = test::fixture_registry();
  auto t = test::fixture_table(4, 3);
  std::vector<double> tiv = t.tiv();
  tiv[2] = 0.0;
  const RegionalVolumeTable bad(t.subject_ids(), t.regions(), t.volumes(), tiv, t.age(), t.labels());
  FeatureRecipe recipe;
  recipe.registry = reg;
  const auto build = build_feature_matrix(bad, recipe);
  REQUIRE(build.rejected.size() == 1);
  CHECK(build.rejected[0].subject_id == "sub2");
  CHECK(build.rejected[0].reason == "tiv <= 0");
  CHECK(build.dataset.n_samples() == 3);
}

TEST_CASE("ventricle_brain_ratio") {
  const auto& reg = test::fixture_registry();
  // 3 ventricles at 20 = 60; 2 white + 6 deep gray + 8 cortex at 75 = 1200.
  std::vector<std::pair<std::string, std::vector<double>>> cols;
  for (const auto& info : reg.regions()) {
    double v = 75.0;
    if (info.tissue == Tissue::ventricle) v = 20.0;
    if (info.tissue == Tissue::csf) v = 500.0;
    cols.push_back({info.region, {v, info.tissue == Tissue::ventricle ? 0.0 : v}});
  }
  const auto t = table_of(cols, {5000.0, 5000.0});
  const auto c = ventricle_brain_ratio(t, reg);
  CHECK(c.name == "ventricle_brain_ratio");
  CHECK(c.values[0] == doctest::Approx(0.05));
  CHECK(c.values[1] == 0.0);

  std::vector<double> twice(2, 2.0);
  const auto doubled = ventricle_brain_ratio(t.scaled(twice), reg);
  CHECK(doubled.values[0] == c.values[0]);
}

TEST_CASE("ventricle_brain_ratio: missing ventricle names the region") {
  const auto& reg = test::fixture_registry();
  std::vector<std::pair<std::string, std::vector<double>>> cols;
  for (const auto& r : test::fixture_regions()) {
    if (r != "3rd ventricle") cols.push_back({r, {10.0}});
  }
  const auto t = table_of(cols, {1000.0});
  try {
    ventricle_brain_ratio(t, reg);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("3rd ventricle") != std::string::npos);
  }
}

TEST_CASE("gray_white_ratio") {
  const auto& reg = test::fixture_registry();
  // Fixture: 2 white, 6 deep gray + 8 cortical gray.
  std::vector<std::pair<std::string, std::vector<double>>> cols;
  for (const auto& info : reg.regions()) {
    double a = 1.0, b = 1.0;
    if (info.tissue == Tissue::white) {
      a = 250.0;
      b = 70.0;
    } else if (info.tissue == Tissue::gray || info.tissue == Tissue::deep_gray) {
      a = 600.0 / 14.0;
      b = 10.0;
    }
    cols.push_back({info.region, {a, b}});
  }
  const auto t = table_of(cols, {5000.0, 5000.0});
  const auto c = gray_white_ratio(t, reg);
  CHECK(c.values[0] == doctest::Approx(1.2));
  CHECK(c.values[1] == doctest::Approx(1.0));
}

TEST_CASE("gray_white_ratio: zero white rejects the subject") {
  const auto& reg = test::fixture_registry();
  auto t = test::fixture_table(3, 5);
  t = t.with_volume(1, "left cerebral white matter", 0.0).with_volume(1, "right cerebral white matter", 0.0);
  FeatureRecipe recipe;
  recipe.registry = reg;
  recipe.steps = {FeatureStep::gw_ratio};
  const auto build = build_feature_matrix(t, recipe);
  REQUIRE(build.rejected.size() == 1);
  CHECK(build.rejected[0].reason == "white matter total is 0");
}

TEST_CASE("gray_white_ratio: reclassifying cerebellar white matter as gray raises it") {
  SyntheticVolumeSpec spec;
  spec.n = 30;
  const auto& base = RegionRegistry::default_registry();
  const auto t = make_synthetic_volumes(spec, base);
  const auto moved = base.with_tissue("left cerebellum white matter", Tissue::gray)
                         .with_tissue("right cerebellum white matter", Tissue::gray);
  const auto before = gray_white_ratio(t, base);
  const auto after = gray_white_ratio(t, moved);
  for (std::size_t i = 0; i < t.n_subjects(); ++i) CHECK(after.values[i] > before.values[i]);
}

TEST_CASE("deep_gray_composite") {
  const auto& reg = RegionRegistry::default_registry();
  std::vector<std::pair<std::string, std::vector<double>>> cols;
  for (const auto& info : reg.regions()) {
    const bool deep = info.tissue == Tissue::deep_gray;
    cols.push_back({info.region, {deep ? 7.0 : 100.0, (info.region == "left putamen") ? 0.0 : (deep ? 7.0 : 100.0)}});
  }
  const auto t = table_of(cols, {1e6, 1e6});
  const auto c = deep_gray_composite(t, reg);
  CHECK(c.name == "deep_gray");
  CHECK(c.values[0] == doctest::Approx(70.0));
  CHECK(c.values[1] == doctest::Approx(63.0));

  std::vector<std::pair<std::string, std::vector<double>>> partial;
  for (const auto& [r, v] : cols) {
    if (r != "right pallidum") partial.push_back({r, v});
  }
  CHECK_THROWS_AS(deep_gray_composite(table_of(partial, {1e6, 1e6}), reg), ConfigError);
}

TEST_CASE("deep_gray fraction lies in (0, 1) on the synthetic preset") {
  SyntheticVolumeSpec spec;
  spec.n = 100;
  spec.effect_size = 1.0;
  const auto t = make_synthetic_volumes(spec);
  FeatureRecipe recipe;
  recipe.steps = {FeatureStep::fractions, FeatureStep::deep_gray};
  recipe.include_raw = false;
  const auto build = build_feature_matrix(t, recipe);
  const auto j = build.dataset.column_index("deep_gray_fracs");
  REQUIRE(j != data::Dataset::npos);
  const auto col = build.dataset.features().col(static_cast<Eigen::Index>(j));
  CHECK(col.minCoeff() > 0.0);
  CHECK(col.maxCoeff() < 1.0);
  CHECK(build.dataset.column_provenance()[j] == "engineered:deep_gray");
}

TEST_CASE("asymmetry_indices") {
  const auto reg = RegionRegistry::parse(
      "region\tpair\ttissue\tlobe\nleft a\tright a\tgray\t-\nright a\tleft a\tgray\t-\n");
  const auto t = table_of({{"left a", {5.0, 3.0, 0.0}}, {"right a", {5.0, 1.0, 0.0}}}, {100, 100, 100});
  const auto cols = asymmetry_indices(t, reg);
  REQUIRE(cols.size() == 1);
  CHECK(cols[0].name == "left a_asym");
  CHECK(cols[0].values[0] == 0.0);
  CHECK(cols[0].values[1] == doctest::Approx(0.5));
  CHECK(cols[0].values[2] == 0.0);

  const auto lonely = table_of({{"left a", {1.0}}}, {100});
  CHECK_THROWS_AS(asymmetry_indices(lonely, reg), ConfigError);
}

TEST_CASE("lobar_aggregates") {
  const auto& reg = RegionRegistry::default_registry();
  const auto t = table_of({{"ctx-lh-paracentral", {12.0}}, {"ctx-rh-insula", {4.0}},
                           {"ctx-rh-lingual", {3.0}}, {"ctx-rh-cuneus", {2.0}}},
                          {1000.0});
  const auto cols = lobar_aggregates(t, reg);
  CHECK(named(cols, "lh-frontal_lobe").values[0] == 12.0);
  CHECK(named(cols, "rh-insula_lobe").values[0] == 4.0);
  CHECK(named(cols, "rh-occipital_lobe").values[0] == 5.0);
  CHECK(cols.size() == 3);

  const auto unknown = table_of({{"ctx-lh-madeup", {1.0}}}, {100.0});
  try {
    lobar_aggregates(unknown, reg);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("ctx-lh-madeup") != std::string::npos);
  }
}

TEST_CASE("lobar_aggregates: partition of the default cortex") {
  SyntheticVolumeSpec spec;
  spec.n = 25;
  const auto t = make_synthetic_volumes(spec);
  const auto cols = lobar_aggregates(t, RegionRegistry::default_registry());
  CHECK(cols.size() == 12);
  for (std::size_t i = 0; i < t.n_subjects(); ++i) {
    double lobes = 0.0, cortex = 0.0;
    for (const auto& c : cols) lobes += c.values[i];
    for (std::size_t j = 0; j < t.regions().size(); ++j) {
      if (t.regions()[j].starts_with("ctx-")) cortex += t.volumes()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    CHECK(std::abs(lobes - cortex) <= 1e-9 * cortex);
  }
}

TEST_CASE("interaction_terms") {
  const auto& reg = test::fixture_registry();
  auto t = uniform_fixture(10.0, 1000.0);
  t = RegionalVolumeTable(t.subject_ids(), t.regions(), t.volumes(), t.tiv(), std::vector<double>{70.0},
                          t.labels());
  Columns engineered{{"ventricle_brain_ratio", {0.05}}};
  const auto res = interaction_terms(t, reg, engineered);
  CHECK(res.warnings.empty());
  CHECK(named(res.columns, "age__x__ventricle_brain_ratio").values[0] == doctest::Approx(3.5));
  CHECK(named(res.columns, "age__x__lateral_ventricle_fracs").values[0] == doctest::Approx(70.0 * 20.0 / 1000.0));

  const auto zero_age = RegionalVolumeTable(t.subject_ids(), t.regions(), t.volumes(), t.tiv(),
                                            std::vector<double>{0.0}, t.labels());
  for (const auto& c : interaction_terms(zero_age, reg, engineered).columns) CHECK(c.values[0] == 0.0);

  const auto no_age = uniform_fixture(10.0, 1000.0);
  const auto skipped = interaction_terms(no_age, reg, engineered);
  CHECK(skipped.columns.empty());
  CHECK(skipped.warnings.size() == 1);
}

TEST_CASE("interaction columns are the product of their parents") {
  const auto& reg = test::fixture_registry();
  const auto t = test::fixture_table(40, 11);
  FeatureRecipe recipe;
  recipe.registry = reg;
  recipe.steps = {FeatureStep::vbr, FeatureStep::interactions};
  const auto build = build_feature_matrix(t, recipe);
  const auto& x = build.dataset.features();
  const auto vbr = build.dataset.column_index("ventricle_brain_ratio");
  const auto inter = build.dataset.column_index("age__x__ventricle_brain_ratio");
  REQUIRE(inter != data::Dataset::npos);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    CHECK(x(i, static_cast<Eigen::Index>(inter)) ==
          (*t.age())[static_cast<std::size_t>(i)] * x(i, static_cast<Eigen::Index>(vbr)));
  }
}

TEST_CASE("build_feature_matrix: identity recipe") {
  const auto t = test::fixture_table(6, 2);
  FeatureRecipe recipe;
  recipe.registry = test::fixture_registry();
  recipe.steps.clear();
  const auto build = build_feature_matrix(t, recipe);
  CHECK(build.dataset.feature_names() == t.regions());
  CHECK(build.dataset.features() == t.volumes());
  CHECK(build.dataset.labels() == t.labels());
  CHECK(build.rejected.empty());

  recipe.include_raw = false;
  CHECK_THROWS_AS(build_feature_matrix(t, recipe), DataError);
  recipe.steps = {FeatureStep::vbr, FeatureStep::vbr};
  CHECK_THROWS_AS(build_feature_matrix(t, recipe), ConfigError);
}

TEST_CASE("build_feature_matrix: 109 regions give 109 fraction columns") {
  SyntheticVolumeSpec spec;
  spec.n = 5;
  const auto base = make_synthetic_volumes(spec);
  // The default registry covers 100 regions; nine more stand in for the rest.
  Eigen::MatrixXd v(base.volumes().rows(), base.volumes().cols() + 9);
  v << base.volumes(), Eigen::MatrixXd::Constant(base.volumes().rows(), 9, 300.0);
  auto regions = base.regions();
  for (int k = 0; k < 9; ++k) regions.push_back("extra region " + std::to_string(k));
  const RegionalVolumeTable t(base.subject_ids(), regions, v, base.tiv(), base.age(), base.labels());
  REQUIRE(t.regions().size() == 109);

  FeatureRecipe recipe;
  recipe.steps.clear();
  const auto raw = build_feature_matrix(t, recipe);
  recipe.steps = {FeatureStep::fractions};
  const auto with = build_feature_matrix(t, recipe);
  CHECK(with.dataset.n_features() - raw.dataset.n_features() == 109);
  CHECK(with.unregistered_regions.size() == 9);
  const auto& prov = with.dataset.column_provenance();
  CHECK(std::count(prov.begin(), prov.end(), "engineered:fractions") == 109);
}

TEST_CASE("build_feature_matrix: ratios and asymmetries are scale invariant") {
  const auto& reg = test::fixture_registry();
  const auto t = test::fixture_table(2, 9);
  // Subject 1 becomes subject 0 scaled by 1.7.
  Eigen::MatrixXd v = t.volumes();
  v.row(1) = 1.7 * v.row(0);
  std::vector<double> tiv{t.tiv()[0], 1.7 * t.tiv()[0]};
  const RegionalVolumeTable pair(t.subject_ids(), t.regions(), v, tiv, std::nullopt, t.labels());
  FeatureRecipe recipe;
  recipe.registry = reg;
  recipe.include_raw = false;
  recipe.steps = {FeatureStep::fractions, FeatureStep::vbr, FeatureStep::gw_ratio, FeatureStep::asymmetry};
  const auto build = build_feature_matrix(pair, recipe);
  const auto& x = build.dataset.features();
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    CHECK(x(1, j) == doctest::Approx(x(0, j)).epsilon(1e-12));
  }
}

TEST_CASE("build_feature_matrix: deterministic and unscaled") {
  const auto t = make_synthetic_volumes({});
  const auto a = build_feature_matrix(t, FeatureRecipe{});
  const auto b = build_feature_matrix(t, FeatureRecipe{});
  CHECK(a.dataset.features() == b.dataset.features());
  CHECK(a.dataset.feature_names() == b.dataset.feature_names());
  // Raw columns keep their mm^3 magnitudes.
  const auto j = a.dataset.column_index("left thalamus");
  CHECK(a.dataset.features().col(static_cast<Eigen::Index>(j)).mean() > 1000.0);
  for (const auto& name : a.dataset.feature_names()) {
    CHECK(std::count(a.dataset.feature_names().begin(), a.dataset.feature_names().end(), name) == 1);
  }
  CHECK(a.dataset.column_index("left lateral ventricle_fracs") != data::Dataset::npos);
  CHECK(a.dataset.column_index("ctx-lh-medialorbitofrontal_asym") != data::Dataset::npos);
  CHECK(a.dataset.column_index("rh-temporal_lobe") != data::Dataset::npos);
}

TEST_CASE("synthetic volumes: effect enlarges ventricles of positives") {
  SyntheticVolumeSpec spec;
  spec.n = 400;
  spec.effect_size = 2.0;
  const auto t = make_synthetic_volumes(spec);
  const auto lv = t.region("left lateral ventricle");
  double pos = 0, neg = 0;
  std::size_t np = 0;
  for (std::size_t i = 0; i < t.n_subjects(); ++i) {
    if (t.labels()[i]) {
      pos += lv(static_cast<Eigen::Index>(i));
      ++np;
    } else {
      neg += lv(static_cast<Eigen::Index>(i));
    }
  }
  CHECK(np == 200);
  CHECK(pos / np > 1.3 * neg / (t.n_subjects() - np));
  CHECK(t.age().has_value());
}
