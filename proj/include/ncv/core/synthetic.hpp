#pragma once

#include "ncv/core/dataset.hpp"

#include <cstddef>
#include <cstdint>

namespace ncv::data {

struct SyntheticSpec {
  std::size_t n = 200;
  std::size_t p = 50;
  std::size_t n_informative = 5;
  // Separation of class means on informative columns, in standard deviations.
  double effect_size = 0.0;
  double positive_fraction = 0.5;
  std::uint64_t seed = 42;
};

// Class-conditional unit-variance Gaussians. Informative columns (the first
// n_informative) have means -effect/2 (class 0) and +effect/2 (class 1); the
// rest are pure noise. Exactly round(n * positive_fraction) rows are
// positive, in shuffled order.
Dataset make_synthetic(const SyntheticSpec& spec);

}  // namespace ncv::data
