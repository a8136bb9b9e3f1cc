#pragma once

#include "ncv/features/registry.hpp"
#include "ncv/features/volume_table.hpp"

#include <Eigen/Core>

#include <random>
#include <string>
#include <vector>

namespace ncv::test {

// Twenty regions: ventricles, white matter, deep gray, csf and four
// bilateral cortical labels over three lobes.
inline const char* kFixtureRegistryTsv =
    "region\tpair\ttissue\tlobe\n"
    "left lateral ventricle\tright lateral ventricle\tventricle\t-\n"
    "right lateral ventricle\tleft lateral ventricle\tventricle\t-\n"
    "3rd ventricle\t-\tventricle\t-\n"
    "left cerebral white matter\tright cerebral white matter\twhite\t-\n"
    "right cerebral white matter\tleft cerebral white matter\twhite\t-\n"
    "left thalamus\tright thalamus\tdeep_gray\t-\n"
    "right thalamus\tleft thalamus\tdeep_gray\t-\n"
    "left caudate\tright caudate\tdeep_gray\t-\n"
    "right caudate\tleft caudate\tdeep_gray\t-\n"
    "left putamen\tright putamen\tdeep_gray\t-\n"
    "right putamen\tleft putamen\tdeep_gray\t-\n"
    "csf\t-\tcsf\t-\n"
    "ctx-lh-paracentral\tctx-rh-paracentral\tgray\tfrontal\n"
    "ctx-rh-paracentral\tctx-lh-paracentral\tgray\tfrontal\n"
    "ctx-lh-precentral\tctx-rh-precentral\tgray\tfrontal\n"
    "ctx-rh-precentral\tctx-lh-precentral\tgray\tfrontal\n"
    "ctx-lh-superiorparietal\tctx-rh-superiorparietal\tgray\tparietal\n"
    "ctx-rh-superiorparietal\tctx-lh-superiorparietal\tgray\tparietal\n"
    "ctx-lh-superiortemporal\tctx-rh-superiortemporal\tgray\ttemporal\n"
    "ctx-rh-superiortemporal\tctx-lh-superiortemporal\tgray\ttemporal\n";

inline const features::RegionRegistry& fixture_registry() {
  static const auto r = features::RegionRegistry::parse(kFixtureRegistryTsv, "fixture");
  return r;
}

inline std::vector<std::string> fixture_regions() {
  std::vector<std::string> out;
  for (const auto& info : fixture_registry().regions()) out.push_back(info.region);
  return out;
}

// Random positive volumes over the fixture regions, TIV twice their sum.
inline features::RegionalVolumeTable fixture_table(std::size_t n, std::uint64_t seed,
                                                   bool with_age = true) {
  const auto regions = fixture_regions();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> vol(100.0, 20000.0);
  std::uniform_real_distribution<double> years(50.0, 85.0);
  Eigen::MatrixXd v(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(regions.size()));
  std::vector<double> tiv(n), age(n);
  std::vector<int> labels(n);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) v(static_cast<Eigen::Index>(i), j) = vol(rng);
    tiv[i] = 2.0 * v.row(static_cast<Eigen::Index>(i)).sum();
    age[i] = years(rng);
    labels[i] = static_cast<int>(i % 2);
    ids.push_back("sub" + std::to_string(i));
  }
  std::optional<std::vector<double>> a;
  if (with_age) a = age;
  return features::RegionalVolumeTable(ids, regions, v, tiv, a, labels);
}

}  // namespace ncv::test
