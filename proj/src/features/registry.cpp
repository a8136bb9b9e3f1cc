#include "ncv/features/registry.hpp"

#include "default_registry_data.hpp"
#include "ncv/core/error.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <sstream>

namespace ncv::features {

namespace {

constexpr std::array<std::pair<Tissue, std::string_view>, 7> kTissueNames{{
    {Tissue::gray, "gray"},
    {Tissue::white, "white"},
    {Tissue::deep_gray, "deep_gray"},
    {Tissue::ventricle, "ventricle"},
    {Tissue::csf, "csf"},
    {Tissue::other, "other"},
    {Tissue::summary, "summary"},
}};

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

}  // namespace

std::string_view to_string(Tissue t) {
  for (const auto& [tissue, name] : kTissueNames) {
    if (tissue == t) return name;
  }
  return "other";
}

Tissue tissue_from_string(std::string_view name) {
  for (const auto& [tissue, n] : kTissueNames) {
    if (n == name) return tissue;
  }
  throw ConfigError("unknown tissue class '" + std::string(name) + "'");
}

Hemisphere hemisphere_of(std::string_view region) {
  if (region.starts_with("left ") || region.starts_with("ctx-lh-")) return Hemisphere::left;
  if (region.starts_with("right ") || region.starts_with("ctx-rh-")) return Hemisphere::right;
  return Hemisphere::none;
}

const std::vector<std::string>& RegionRegistry::lobes() {
  static const std::vector<std::string> names{"frontal",   "parietal",  "temporal",
                                              "occipital", "cingulate", "insula"};
  return names;
}

RegionRegistry RegionRegistry::parse(std::string_view tsv, const std::string& source) {
  RegionRegistry reg;
  std::map<std::string, std::size_t, std::less<>> index;
  std::istringstream in{std::string(tsv)};
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  auto fail = [&](const std::string& what) {
    throw ConfigError(source + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto cells = split_tabs(line);
    if (!header_seen) {
      if (cells != std::vector<std::string>{"region", "pair", "tissue", "lobe"}) {
        fail("expected header 'region<TAB>pair<TAB>tissue<TAB>lobe'");
      }
      header_seen = true;
      continue;
    }
    if (cells.size() != 4) fail("expected 4 tab-separated cells, got " + std::to_string(cells.size()));
    RegionInfo info;
    info.region = cells[0];
    if (info.region.empty()) fail("empty region name");
    if (index.count(info.region)) fail("duplicate region '" + info.region + "'");
    info.partner = cells[1] == "-" ? "" : cells[1];
    info.tissue = tissue_from_string(cells[2]);
    info.lobe = cells[3] == "-" ? "" : cells[3];
    if (!info.lobe.empty() &&
        std::find(lobes().begin(), lobes().end(), info.lobe) == lobes().end()) {
      fail("unknown lobe '" + info.lobe + "' for region '" + info.region + "'");
    }
    info.hemisphere = hemisphere_of(info.region);
    index.emplace(info.region, reg.regions_.size());
    reg.regions_.push_back(std::move(info));
  }
  if (!header_seen) throw ConfigError(source + ": registry is empty");

  std::vector<std::string> unmatched;
  for (const auto& r : reg.regions_) {
    if (r.partner.empty()) continue;
    const auto it = index.find(r.partner);
    if (it == index.end() || reg.regions_[it->second].partner != r.region ||
        r.hemisphere == Hemisphere::none ||
        reg.regions_[it->second].hemisphere == r.hemisphere) {
      unmatched.push_back(r.region);
    }
  }
  if (!unmatched.empty()) {
    std::string list;
    for (const auto& u : unmatched) list += (list.empty() ? "" : ", ") + u;
    throw ConfigError(source + ": unmatched laterality pairs: " + list);
  }
  return reg;
}

RegionRegistry RegionRegistry::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open region registry '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

const RegionRegistry& RegionRegistry::default_registry() {
  static const RegionRegistry reg = parse(detail::kDefaultRegistryTsv, "default_registry.tsv");
  return reg;
}

const RegionInfo* RegionRegistry::find(std::string_view region) const {
  for (const auto& r : regions_) {
    if (r.region == region) return &r;
  }
  return nullptr;
}

std::vector<std::string> RegionRegistry::members(Tissue t) const {
  std::vector<std::string> out;
  for (const auto& r : regions_) {
    if (r.tissue == t) out.push_back(r.region);
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> RegionRegistry::pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& r : regions_) {
    if (!r.partner.empty() && r.hemisphere == Hemisphere::left) out.emplace_back(r.region, r.partner);
  }
  return out;
}

RegionRegistry RegionRegistry::with_tissue(std::string_view region, Tissue t) const {
  RegionRegistry copy = *this;
  for (auto& r : copy.regions_) {
    if (r.region == region) {
      r.tissue = t;
      return copy;
    }
  }
  throw ConfigError("region '" + std::string(region) + "' is not in the registry");
}

}  // namespace ncv::features
