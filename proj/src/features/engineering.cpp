#include "ncv/features/engineering.hpp"

#include "ncv/core/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>

namespace ncv::features {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

constexpr std::array<std::pair<FeatureStep, std::string_view>, 7> kStepNames{{
    {FeatureStep::fractions, "fractions"},
    {FeatureStep::vbr, "vbr"},
    {FeatureStep::gw_ratio, "gw_ratio"},
    {FeatureStep::deep_gray, "deep_gray"},
    {FeatureStep::asymmetry, "asymmetry"},
    {FeatureStep::lobar, "lobar"},
    {FeatureStep::interactions, "interactions"},
}};

Eigen::VectorXd tissue_sum(const RegionalVolumeTable& table, const RegionRegistry& registry,
                           std::initializer_list<Tissue> classes) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(table.n_subjects()));
  for (Tissue t : classes) {
    for (const auto& name : registry.members(t)) sum += table.region(name);
  }
  return sum;
}

std::vector<double> ratio(const Eigen::VectorXd& num, const Eigen::VectorXd& den) {
  std::vector<double> out(static_cast<std::size_t>(num.size()));
  for (Eigen::Index i = 0; i < num.size(); ++i) {
    out[static_cast<std::size_t>(i)] = den(i) > 0.0 ? num(i) / den(i) : kNaN;
  }
  return out;
}

std::vector<double> per_tiv(const RegionalVolumeTable& table, const Eigen::VectorXd& v) {
  std::vector<double> out(table.n_subjects());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double t = table.tiv()[i];
    out[i] = t > 0.0 ? v(static_cast<Eigen::Index>(i)) / t : kNaN;
  }
  return out;
}

const Column* find_column(const Columns& cols, std::string_view name) {
  for (const auto& c : cols) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool has_step(const FeatureRecipe& r, FeatureStep s) {
  return std::find(r.steps.begin(), r.steps.end(), s) != r.steps.end();
}

}  // namespace

Columns tiv_fractions(const RegionalVolumeTable& table) {
  Columns out;
  out.reserve(table.regions().size());
  for (std::size_t j = 0; j < table.regions().size(); ++j) {
    out.push_back({table.regions()[j] + std::string(kFracsSuffix),
                   per_tiv(table, table.volumes().col(static_cast<Eigen::Index>(j)))});
  }
  return out;
}

Column ventricle_brain_ratio(const RegionalVolumeTable& table, const RegionRegistry& registry) {
  if (registry.members(Tissue::ventricle).empty()) {
    throw ConfigError("ventricle_brain_ratio: registry lists no ventricle regions");
  }
  const auto vent = tissue_sum(table, registry, {Tissue::ventricle});
  const auto brain =
      tissue_sum(table, registry, {Tissue::gray, Tissue::white, Tissue::deep_gray, Tissue::other});
  return {"ventricle_brain_ratio", ratio(vent, brain)};
}

Column gray_white_ratio(const RegionalVolumeTable& table, const RegionRegistry& registry) {
  const auto gray = tissue_sum(table, registry, {Tissue::gray, Tissue::deep_gray});
  const auto white = tissue_sum(table, registry, {Tissue::white});
  return {"gray_white_ratio", ratio(gray, white)};
}

Column deep_gray_composite(const RegionalVolumeTable& table, const RegionRegistry& registry) {
  if (registry.members(Tissue::deep_gray).empty()) {
    throw ConfigError("deep_gray_composite: registry lists no deep_gray regions");
  }
  const auto sum = tissue_sum(table, registry, {Tissue::deep_gray});
  return {"deep_gray", std::vector<double>(sum.data(), sum.data() + sum.size())};
}

Columns asymmetry_indices(const RegionalVolumeTable& table, const RegionRegistry& registry) {
  Columns out;
  std::vector<std::string> unmatched;
  for (const auto& [left, right] : registry.pairs()) {
    const bool has_l = table.has_region(left), has_r = table.has_region(right);
    if (!has_l && !has_r) continue;
    if (has_l != has_r) {
      unmatched.push_back(has_l ? left : right);
      continue;
    }
    const auto l = table.region(left);
    const auto r = table.region(right);
    std::vector<double> v(table.n_subjects());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double a = l(static_cast<Eigen::Index>(i)), b = r(static_cast<Eigen::Index>(i));
      v[i] = a + b > 0.0 ? (a - b) / (a + b) : 0.0;
    }
    out.push_back({left + std::string(kAsymSuffix), std::move(v)});
  }
  if (!unmatched.empty()) {
    std::string list;
    for (const auto& u : unmatched) list += (list.empty() ? "" : ", ") + u;
    throw ConfigError("asymmetry_indices: regions without their contralateral partner: " + list);
  }
  return out;
}

Columns lobar_aggregates(const RegionalVolumeTable& table, const RegionRegistry& registry) {
  const auto& lobes = RegionRegistry::lobes();
  std::array<std::vector<std::vector<std::size_t>>, 2> members;
  members.fill(std::vector<std::vector<std::size_t>>(lobes.size()));
  std::vector<std::string> unmapped;
  for (std::size_t j = 0; j < table.regions().size(); ++j) {
    const auto& name = table.regions()[j];
    if (!name.starts_with("ctx-")) continue;
    const RegionInfo* info = registry.find(name);
    const Hemisphere h = hemisphere_of(name);
    if (info == nullptr || info->lobe.empty() || h == Hemisphere::none) {
      unmapped.push_back(name);
      continue;
    }
    const auto lobe = static_cast<std::size_t>(
        std::find(lobes.begin(), lobes.end(), info->lobe) - lobes.begin());
    members[h == Hemisphere::left ? 0 : 1][lobe].push_back(j);
  }
  if (!unmapped.empty()) {
    std::string list;
    for (const auto& u : unmapped) list += (list.empty() ? "" : ", ") + u;
    throw ConfigError("lobar_aggregates: cortical labels without a lobe: " + list);
  }
  Columns out;
  const std::array<std::string, 2> hemi{"lh", "rh"};
  for (std::size_t h = 0; h < 2; ++h) {
    for (std::size_t l = 0; l < lobes.size(); ++l) {
      if (members[h][l].empty()) continue;
      Eigen::VectorXd sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(table.n_subjects()));
      for (std::size_t j : members[h][l]) sum += table.volumes().col(static_cast<Eigen::Index>(j));
      out.push_back({hemi[h] + "-" + lobes[l] + std::string(kLobeSuffix),
                     std::vector<double>(sum.data(), sum.data() + sum.size())});
    }
  }
  return out;
}

InteractionResult interaction_terms(const RegionalVolumeTable& table,
                                    const RegionRegistry& registry, const Columns& engineered) {
  InteractionResult res;
  if (!table.age()) {
    res.warnings.push_back("interactions skipped: no age column");
    return res;
  }
  const auto& age = *table.age();

  std::vector<Column> parents;
  if (const Column* c = find_column(engineered, "ventricle_brain_ratio")) {
    parents.push_back(*c);
  } else {
    try {
      parents.push_back(ventricle_brain_ratio(table, registry));
    } catch (const ConfigError& e) {
      res.warnings.push_back(std::string("age x ventricle_brain_ratio skipped: ") + e.what());
    }
  }
  if (const Column* c = find_column(engineered, "lateral_ventricle_fracs")) {
    parents.push_back(*c);
  } else if (table.has_region("left lateral ventricle") && table.has_region("right lateral ventricle")) {
    parents.push_back({"lateral_ventricle_fracs",
                       per_tiv(table, table.region("left lateral ventricle") +
                                          table.region("right lateral ventricle"))});
  } else {
    res.warnings.push_back("age x lateral_ventricle_fracs skipped: lateral ventricles missing");
  }

  for (const auto& p : parents) {
    std::vector<double> v(age.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = age[i] * p.values[i];
    res.columns.push_back({"age" + std::string(kInteractionInfix) + p.name, std::move(v)});
  }
  return res;
}

std::string_view to_string(FeatureStep s) {
  for (const auto& [step, name] : kStepNames) {
    if (step == s) return name;
  }
  return "fractions";
}

FeatureStep feature_step_from_string(std::string_view name) {
  for (const auto& [step, n] : kStepNames) {
    if (n == name) return step;
  }
  throw ConfigError("unknown feature step '" + std::string(name) + "'");
}

const std::vector<FeatureStep>& all_feature_steps() {
  static const std::vector<FeatureStep> steps = [] {
    std::vector<FeatureStep> s;
    for (const auto& [step, name] : kStepNames) s.push_back(step);
    return s;
  }();
  return steps;
}

FeatureBuild build_feature_matrix(const RegionalVolumeTable& table, const FeatureRecipe& recipe) {
  {
    std::set<FeatureStep> seen;
    for (FeatureStep s : recipe.steps) {
      if (!seen.insert(s).second) {
        throw ConfigError("feature recipe lists step '" + std::string(to_string(s)) + "' twice");
      }
    }
  }
  const std::size_t n = table.n_subjects();
  Columns columns;
  std::vector<std::string> provenance;
  std::vector<std::string> warnings;
  auto append = [&](Columns cols, std::string_view step) {
    for (auto& c : cols) {
      columns.push_back(std::move(c));
      provenance.push_back(step == data::kRawProvenance ? std::string(step)
                                                         : "engineered:" + std::string(step));
    }
  };

  if (recipe.include_raw) {
    Columns raw;
    for (std::size_t j = 0; j < table.regions().size(); ++j) {
      const auto col = table.volumes().col(static_cast<Eigen::Index>(j));
      raw.push_back({table.regions()[j], std::vector<double>(col.data(), col.data() + col.size())});
    }
    append(std::move(raw), data::kRawProvenance);
  }
  const bool fractions = has_step(recipe, FeatureStep::fractions);
  for (FeatureStep step : recipe.steps) {
    const auto name = to_string(step);
    switch (step) {
      case FeatureStep::fractions: append(tiv_fractions(table), name); break;
      case FeatureStep::vbr: append({ventricle_brain_ratio(table, recipe.registry)}, name); break;
      case FeatureStep::gw_ratio: append({gray_white_ratio(table, recipe.registry)}, name); break;
      case FeatureStep::deep_gray: {
        Column dg = deep_gray_composite(table, recipe.registry);
        Columns out{dg};
        if (fractions) {
          Eigen::Map<const Eigen::VectorXd> v(dg.values.data(), static_cast<Eigen::Index>(n));
          out.push_back({"deep_gray" + std::string(kFracsSuffix), per_tiv(table, v)});
        }
        append(std::move(out), name);
        break;
      }
      case FeatureStep::asymmetry: append(asymmetry_indices(table, recipe.registry), name); break;
      case FeatureStep::lobar: append(lobar_aggregates(table, recipe.registry), name); break;
      case FeatureStep::interactions: {
        auto res = interaction_terms(table, recipe.registry, columns);
        warnings.insert(warnings.end(), res.warnings.begin(), res.warnings.end());
        append(std::move(res.columns), name);
        break;
      }
    }
  }
  if (columns.empty()) throw DataError("build_feature_matrix: recipe produces no columns");
  {
    std::set<std::string> names;
    for (const auto& c : columns) {
      if (!names.insert(c.name).second) {
        throw ConfigError("build_feature_matrix: duplicate output column '" + c.name + "'");
      }
    }
  }

  // Reject subjects whose engineered values are undefined.
  std::vector<RejectedSubject> rejected;
  std::vector<std::size_t> keep;
  const bool uses_tiv = fractions || has_step(recipe, FeatureStep::interactions);
  for (std::size_t i = 0; i < n; ++i) {
    std::string reason;
    if (uses_tiv && table.tiv()[i] <= 0.0) {
      reason = "tiv <= 0";
    } else {
      for (const auto& c : columns) {
        if (!std::isnan(c.values[i])) continue;
        if (c.name == "gray_white_ratio") {
          reason = "white matter total is 0";
        } else if (c.name == "ventricle_brain_ratio") {
          reason = "brain tissue total is 0";
        } else {
          reason = "undefined value in '" + c.name + "'";
        }
        break;
      }
    }
    if (reason.empty()) {
      keep.push_back(i);
    } else {
      rejected.push_back({table.subject_ids()[i], std::move(reason)});
    }
  }
  if (keep.empty()) throw DataError("build_feature_matrix: every subject was rejected");

  Eigen::MatrixXd x(static_cast<Eigen::Index>(keep.size()), static_cast<Eigen::Index>(columns.size()));
  std::vector<std::string> names, ids;
  std::vector<int> labels;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    names.push_back(columns[j].name);
    for (std::size_t r = 0; r < keep.size(); ++r) {
      x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = columns[j].values[keep[r]];
    }
  }
  for (std::size_t i : keep) {
    ids.push_back(table.subject_ids()[i]);
    labels.push_back(table.labels()[i]);
  }

  std::vector<std::string> unregistered;
  for (const auto& r : table.regions()) {
    if (recipe.registry.find(r) == nullptr) unregistered.push_back(r);
  }
  if (!unregistered.empty()) {
    warnings.push_back(std::to_string(unregistered.size()) +
                       " table regions are not in the registry and enter only raw/fraction columns");
  }
  return FeatureBuild{
      data::Dataset(std::move(names), std::move(x), std::move(labels), std::move(ids),
                    std::move(provenance)),
      std::move(rejected), std::move(warnings), std::move(unregistered)};
}

}  // namespace ncv::features
