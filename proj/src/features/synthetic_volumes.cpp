#include "ncv/features/synthetic_volumes.hpp"

#include "ncv/core/error.hpp"
#include "ncv/core/seed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>

namespace ncv::features {

namespace {

// Typical single-hemisphere volumes, keyed by the name without laterality.
const std::map<std::string, double, std::less<>>& presets() {
  static const std::map<std::string, double, std::less<>> v{
      {"cerebral white matter", 230000}, {"lateral ventricle", 12000},
      {"inferior lateral ventricle", 600}, {"cerebellum white matter", 14000},
      {"cerebellum cortex", 52000},      {"thalamus", 7500},
      {"caudate", 3500},                 {"putamen", 4800},
      {"pallidum", 1900},                {"hippocampus", 4000},
      {"amygdala", 1600},                {"accumbens area", 600},
      {"ventral DC", 4000},              {"3rd ventricle", 1200},
      {"4th ventricle", 1800},           {"brain-stem", 20000},
      {"csf", 1100},                     {"bankssts", 2500},
      {"caudalanteriorcingulate", 2000}, {"caudalmiddlefrontal", 6500},
      {"cuneus", 3300},                  {"entorhinal", 2000},
      {"fusiform", 9500},                {"inferiorparietal", 13000},
      {"inferiortemporal", 11000},       {"isthmuscingulate", 2600},
      {"lateraloccipital", 12000},       {"lateralorbitofrontal", 8000},
      {"lingual", 7000},                 {"medialorbitofrontal", 5500},
      {"middletemporal", 11000},         {"parahippocampal", 2100},
      {"paracentral", 3800},             {"parsopercularis", 4500},
      {"parsorbitalis", 2300},           {"parstriangularis", 3800},
      {"pericalcarine", 2100},           {"postcentral", 10000},
      {"posteriorcingulate", 3200},      {"precentral", 13000},
      {"precuneus", 10000},              {"rostralanteriorcingulate", 2300},
      {"rostralmiddlefrontal", 17000},   {"superiorfrontal", 23000},
      {"superiorparietal", 14000},       {"superiortemporal", 12000},
      {"supramarginal", 11000},          {"frontalpole", 900},
      {"temporalpole", 2300},            {"transversetemporal", 1100},
      {"insula", 7000},
  };
  return v;
}

std::string_view strip_laterality(std::string_view region) {
  for (std::string_view p : {"left ", "right ", "ctx-lh-", "ctx-rh-"}) {
    if (region.starts_with(p)) return region.substr(p.size());
  }
  return region;
}

double preset_volume(const RegionInfo& r) {
  const auto it = presets().find(strip_laterality(r.region));
  if (it != presets().end()) return it->second;
  return r.tissue == Tissue::ventricle ? 1000.0 : 3000.0;
}

}  // namespace

RegionalVolumeTable make_synthetic_volumes(const SyntheticVolumeSpec& spec,
                                           const RegionRegistry& registry) {
  if (spec.n < 2) throw DataError("make_synthetic_volumes: n must be at least 2");
  if (!(spec.positive_fraction > 0.0 && spec.positive_fraction < 1.0)) {
    throw DataError("make_synthetic_volumes: positive_fraction must be in (0, 1)");
  }
  const auto& regions = registry.regions();
  const auto n = static_cast<Eigen::Index>(spec.n);
  const auto p = static_cast<Eigen::Index>(regions.size());

  std::vector<int> labels(spec.n, 0);
  const auto n_pos = static_cast<std::size_t>(
      std::llround(static_cast<double>(spec.n) * spec.positive_fraction));
  std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(n_pos), 1);
  std::mt19937_64 label_rng(derive_seed(spec.seed, "synthetic_volumes_labels"));
  std::shuffle(labels.begin(), labels.end(), label_rng);

  std::mt19937_64 rng(derive_seed(spec.seed, "synthetic_volumes"));
  std::normal_distribution<double> z(0.0, 1.0);
  Eigen::MatrixXd vol(n, p);
  std::vector<double> tiv(spec.n), age(spec.n);
  std::vector<std::string> ids(spec.n);
  std::vector<std::size_t> summaries;
  for (std::size_t j = 0; j < regions.size(); ++j) {
    if (regions[j].tissue == Tissue::summary) summaries.push_back(j);
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    const auto si = static_cast<std::size_t>(i);
    const bool pos = labels[si] == 1;
    const double head = std::max(0.6, 1.0 + 0.1 * z(rng));
    age[si] = 62.0 + 8.0 * z(rng) + (pos ? 3.0 * spec.effect_size : 0.0);
    double total = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      const RegionInfo& r = regions[static_cast<std::size_t>(j)];
      double v = preset_volume(r) * head * std::exp(0.08 * z(rng));
      if (pos && r.tissue == Tissue::ventricle) v *= 1.0 + 0.3 * spec.effect_size;
      if (pos && r.tissue == Tissue::deep_gray) v *= 1.0 - 0.05 * std::min(spec.effect_size, 10.0);
      vol(i, j) = std::max(v, 0.0);
    }
    // Summary regions total the cortical parcels of their hemisphere.
    for (std::size_t s : summaries) {
      const Hemisphere h = regions[s].hemisphere;
      double sum = 0.0;
      for (std::size_t j = 0; j < regions.size(); ++j) {
        if (!regions[j].lobe.empty() && regions[j].hemisphere == h) sum += vol(i, static_cast<Eigen::Index>(j));
      }
      vol(i, static_cast<Eigen::Index>(s)) = sum;
    }
    for (std::size_t j = 0; j < regions.size(); ++j) {
      if (regions[j].tissue != Tissue::summary) total += vol(i, static_cast<Eigen::Index>(j));
    }
    tiv[si] = 1.1 * total * std::exp(0.02 * z(rng));
    char buf[32];
    std::snprintf(buf, sizeof buf, "vol%05zu", si);
    ids[si] = buf;
  }

  std::vector<std::string> names;
  names.reserve(regions.size());
  for (const auto& r : regions) names.push_back(r.region);
  std::optional<std::vector<double>> age_opt;
  if (spec.with_age) age_opt = std::move(age);
  return RegionalVolumeTable(std::move(ids), std::move(names), std::move(vol), std::move(tiv),
                             std::move(age_opt), std::move(labels));
}

}  // namespace ncv::features
