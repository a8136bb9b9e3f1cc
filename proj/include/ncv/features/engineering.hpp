#pragma once

#include "ncv/core/dataset.hpp"
#include "ncv/features/registry.hpp"
#include "ncv/features/volume_table.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ncv::features {

// One engineered column; NaN marks a subject the step cannot handle (those
// subjects are rejected by build_feature_matrix).
struct Column {
  std::string name;
  std::vector<double> values;
};
using Columns = std::vector<Column>;

inline constexpr std::string_view kFracsSuffix = "_fracs";
inline constexpr std::string_view kAsymSuffix = "_asym";
inline constexpr std::string_view kLobeSuffix = "_lobe";
inline constexpr std::string_view kInteractionInfix = "__x__";

// "<region>_fracs" = volume / tiv for every region of the table.
Columns tiv_fractions(const RegionalVolumeTable& table);

// "ventricle_brain_ratio" = ventricles / (gray + white + deep_gray + other).
Column ventricle_brain_ratio(const RegionalVolumeTable& table, const RegionRegistry& registry);

// "gray_white_ratio" = (gray + deep_gray) / white.
Column gray_white_ratio(const RegionalVolumeTable& table, const RegionRegistry& registry);

// "deep_gray" = sum of the deep_gray registry members.
Column deep_gray_composite(const RegionalVolumeTable& table, const RegionRegistry& registry);

// "<left member>_asym" = (L - R) / (L + R), 0 when L + R = 0, for every
// registry pair present in the table.
Columns asymmetry_indices(const RegionalVolumeTable& table, const RegionRegistry& registry);

// "<lh|rh>-<lobe>_lobe" sums of cortical volumes, for each hemisphere/lobe
// with at least one member in the table.
Columns lobar_aggregates(const RegionalVolumeTable& table, const RegionRegistry& registry);

struct InteractionResult {
  Columns columns;
  std::vector<std::string> warnings;
};

// age x ventricle_brain_ratio and age x lateral_ventricle_fracs, named
// "age__x__<parent>". Parents are taken from `engineered` when present and
// computed otherwise. Without age the step is skipped with a warning.
InteractionResult interaction_terms(const RegionalVolumeTable& table,
                                    const RegionRegistry& registry, const Columns& engineered);

enum class FeatureStep { fractions, vbr, gw_ratio, deep_gray, asymmetry, lobar, interactions };
std::string_view to_string(FeatureStep s);
FeatureStep feature_step_from_string(std::string_view name);
const std::vector<FeatureStep>& all_feature_steps();

struct FeatureRecipe {
  std::vector<FeatureStep> steps = all_feature_steps();
  RegionRegistry registry = RegionRegistry::default_registry();
  bool include_raw = true;
};

struct RejectedSubject {
  std::string subject_id;
  std::string reason;
};

struct FeatureBuild {
  data::Dataset dataset;
  std::vector<RejectedSubject> rejected;
  std::vector<std::string> warnings;
  // Table regions the registry does not know; they still get raw and
  // fraction columns.
  std::vector<std::string> unregistered_regions;
};

// Raw volumes (optional) followed by each step's columns in recipe order.
// Column provenance is "raw" or "engineered:<step>". No scaling is applied.
// Throws ConfigError on duplicate steps or output names, and DataError when
// the output has no columns or no subjects.
FeatureBuild build_feature_matrix(const RegionalVolumeTable& table, const FeatureRecipe& recipe);

}  // namespace ncv::features
