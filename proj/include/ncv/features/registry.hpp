#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ncv::features {

// "summary" marks totals that overlap other regions (e.g. whole cerebral
// cortex); they never enter tissue sums.
enum class Tissue { gray, white, deep_gray, ventricle, csf, other, summary };

std::string_view to_string(Tissue t);
Tissue tissue_from_string(std::string_view name);

enum class Hemisphere { left, right, none };

// From the naming convention: "left "/"ctx-lh-" and "right "/"ctx-rh-".
Hemisphere hemisphere_of(std::string_view region);

struct RegionInfo {
  std::string region;
  std::string partner;  // contralateral region, empty when unpaired
  Tissue tissue = Tissue::other;
  std::string lobe;     // cortical labels only, empty otherwise
  Hemisphere hemisphere = Hemisphere::none;
};

// Laterality, tissue-class and lobe mapping for regional volumes.
//
// File format: tab-separated with header "region pair tissue lobe"; "-" for
// an empty pair or lobe; lines starting with '#' are ignored.
class RegionRegistry {
 public:
  // Throws ConfigError on malformed rows, duplicate regions, unknown tissue
  // or lobe names, or a pair whose partner does not point back.
  static RegionRegistry parse(std::string_view tsv, const std::string& source = "<registry>");
  static RegionRegistry load(const std::filesystem::path& path);
  // Desikan-Killiany cortical labels plus SynthSeg subcortical structures.
  static const RegionRegistry& default_registry();

  const std::vector<RegionInfo>& regions() const { return regions_; }
  const RegionInfo* find(std::string_view region) const;

  // Regions of one tissue class, registry order.
  std::vector<std::string> members(Tissue t) const;
  // (left, right) pairs, registry order of the left member.
  std::vector<std::pair<std::string, std::string>> pairs() const;

  // Copy with one region moved to another tissue class.
  RegionRegistry with_tissue(std::string_view region, Tissue t) const;

  // frontal, parietal, temporal, occipital, cingulate, insula
  static const std::vector<std::string>& lobes();

 private:
  std::vector<RegionInfo> regions_;
};

}  // namespace ncv::features
