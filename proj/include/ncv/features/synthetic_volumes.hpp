#pragma once

#include "ncv/features/registry.hpp"
#include "ncv/features/volume_table.hpp"

#include <cstdint>

namespace ncv::features {

struct SyntheticVolumeSpec {
  std::size_t n = 200;
  double positive_fraction = 0.5;
  // 0 gives label-independent volumes. Positives get enlarged ventricles and
  // smaller deep-gray structures as the effect grows.
  double effect_size = 0.0;
  bool with_age = true;
  std::uint64_t seed = 42;
};

// Plausible adult volumes (mm^3) for every region of the registry, TIV about
// 1.1 times the summed non-summary regions, ages around 60.
RegionalVolumeTable make_synthetic_volumes(
    const SyntheticVolumeSpec& spec,
    const RegionRegistry& registry = RegionRegistry::default_registry());

}  // namespace ncv::features
