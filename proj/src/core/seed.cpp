#include "ncv/core/seed.hpp"

namespace ncv {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t root, std::string_view stage, std::int64_t fold,
                          std::int64_t unit) {
  std::uint64_t h = splitmix64(root);
  h = splitmix64(h ^ fnv1a(stage));
  h = splitmix64(h ^ static_cast<std::uint64_t>(fold));
  h = splitmix64(h ^ static_cast<std::uint64_t>(unit));
  return h;
}

}  // namespace ncv
