#pragma once

#include <cstdint>
#include <string_view>

namespace ncv {

inline constexpr std::uint64_t kDefaultSeed = 42;

// Stable child seed for a unit of work identified by (stage, fold, unit).
// The value depends only on its arguments, never on scheduling, so parallel
// execution reproduces serial results.
std::uint64_t derive_seed(std::uint64_t root, std::string_view stage, std::int64_t fold = 0,
                          std::int64_t unit = 0);

}  // namespace ncv
