#include "ncv/report/run_config.hpp"

#include "ncv/core/error.hpp"
#include "ncv/report/json_io.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace ncv::report {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError("config error at " + path + ": " + msg);
}

std::string type_name(const json& j) { return j.type_name(); }

// Strict view of one JSON object: rejects keys outside `allowed` and
// reports type mismatches with their path.
class Obj {
 public:
  Obj(const json& j, std::string path, std::initializer_list<const char*> allowed)
      : j_(j), path_(std::move(path)) {
    if (!j.is_object()) fail(path_, "expected an object, got " + type_name(j));
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items()) {
      if (!ok.count(key)) {
        std::string list;
        for (const auto& a : ok) list += (list.empty() ? "" : ", ") + a;
        fail(path_, "unknown key '" + key + "' (allowed: " + list + ")");
      }
    }
  }

  bool has(const char* key) const { return j_.contains(key); }
  const json& at(const char* key) const {
    if (!j_.contains(key)) fail(path_, "missing required key '" + std::string(key) + "'");
    return j_.at(key);
  }
  std::string sub(const char* key) const { return path_ + "." + key; }
  const std::string& path() const { return path_; }

  template <class T>
  T get(const char* key, T fallback) const {
    return has(key) ? as<T>(j_.at(key), sub(key)) : fallback;
  }
  template <class T>
  T req(const char* key) const {
    return as<T>(at(key), sub(key));
  }

  template <class T>
  static T as(const json& v, const std::string& path) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) fail(path, "expected a boolean, got " + type_name(v));
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) fail(path, "expected a string, got " + type_name(v));
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) fail(path, "expected an integer, got " + type_name(v));
      if (std::is_unsigned_v<T> && !v.is_number_unsigned()) {
        fail(path, "expected a nonnegative integer");
      }
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) fail(path, "expected a number, got " + type_name(v));
    }
    return v.get<T>();
  }

 private:
  const json& j_;
  std::string path_;
};

int positive_int(const Obj& o, const char* key, int fallback, int min = 1) {
  const int v = o.get<int>(key, fallback);
  if (v < min) fail(o.sub(key), "must be at least " + std::to_string(min));
  return v;
}

double fraction(const Obj& o, const char* key, double fallback) {
  const double v = o.get<double>(key, fallback);
  if (!(v > 0.0 && v < 1.0)) fail(o.sub(key), "must lie in (0, 1)");
  return v;
}

DataSource parse_data(const json& j, const std::string& path, std::uint64_t seed,
                      const std::filesystem::path& base_dir, json& echo) {
  const Obj o(j, path, {"synthetic", "synthetic_volumes", "csv"});
  if (j.size() != 1) fail(path, "exactly one of synthetic, synthetic_volumes, csv is required");
  if (o.has("synthetic")) {
    const Obj s(o.at("synthetic"), o.sub("synthetic"),
                {"n", "p", "n_informative", "effect_size", "positive_fraction", "seed"});
    GaussianSource g;
    g.spec.n = static_cast<std::size_t>(positive_int(s, "n", 200, 4));
    g.spec.p = static_cast<std::size_t>(positive_int(s, "p", 50));
    g.spec.n_informative = static_cast<std::size_t>(positive_int(s, "n_informative", 5, 0));
    if (g.spec.n_informative > g.spec.p) fail(s.sub("n_informative"), "exceeds p");
    g.spec.effect_size = s.get<double>("effect_size", 0.0);
    if (g.spec.effect_size < 0.0) fail(s.sub("effect_size"), "must be nonnegative");
    g.spec.positive_fraction = fraction(s, "positive_fraction", 0.5);
    g.spec.seed = s.get<std::uint64_t>("seed", seed);
    echo = {{"synthetic",
             {{"n", g.spec.n}, {"p", g.spec.p}, {"n_informative", g.spec.n_informative},
              {"effect_size", g.spec.effect_size}, {"positive_fraction", g.spec.positive_fraction},
              {"seed", g.spec.seed}}}};
    return g;
  }
  if (o.has("synthetic_volumes")) {
    const Obj s(o.at("synthetic_volumes"), o.sub("synthetic_volumes"),
                {"n", "positive_fraction", "effect_size", "with_age", "seed"});
    VolumeSource v;
    v.spec.n = static_cast<std::size_t>(positive_int(s, "n", 200, 4));
    v.spec.positive_fraction = fraction(s, "positive_fraction", 0.5);
    v.spec.effect_size = s.get<double>("effect_size", 0.0);
    if (v.spec.effect_size < 0.0) fail(s.sub("effect_size"), "must be nonnegative");
    v.spec.with_age = s.get<bool>("with_age", true);
    v.spec.seed = s.get<std::uint64_t>("seed", seed);
    echo = {{"synthetic_volumes",
             {{"n", v.spec.n}, {"positive_fraction", v.spec.positive_fraction},
              {"effect_size", v.spec.effect_size}, {"with_age", v.spec.with_age},
              {"seed", v.spec.seed}}}};
    return v;
  }
  const Obj s(o.at("csv"), o.sub("csv"),
              {"path", "label_column", "id_column", "label_cutoff", "tiv_column", "age_column"});
  CsvSource c;
  const auto raw_path = s.req<std::string>("path");
  c.path = std::filesystem::path(raw_path).is_absolute() ? std::filesystem::path(raw_path)
                                                         : base_dir / raw_path;
  c.label_column = s.req<std::string>("label_column");
  c.id_column = s.req<std::string>("id_column");
  c.label_cutoff = s.get<double>("label_cutoff", 3.0);
  if (s.has("tiv_column")) c.tiv_column = s.req<std::string>("tiv_column");
  if (s.has("age_column")) c.age_column = s.req<std::string>("age_column");
  echo = {{"csv",
           {{"path", raw_path}, {"label_column", c.label_column}, {"id_column", c.id_column},
            {"label_cutoff", c.label_cutoff},
            {"tiv_column", c.tiv_column ? json(*c.tiv_column) : json(nullptr)},
            {"age_column", c.age_column ? json(*c.age_column) : json(nullptr)}}}};
  return c;
}

FeatureSetConfig parse_feature_set(const json& j, const std::string& path,
                                   const std::filesystem::path& base_dir, json& echo) {
  const Obj o(j, path, {"name", "engineered", "steps", "include_raw", "registry"});
  FeatureSetConfig f;
  f.name = o.req<std::string>("name");
  if (f.name.empty()) fail(o.sub("name"), "must not be empty");
  f.engineered = o.get<bool>("engineered", false);
  if (o.has("steps")) {
    const auto& steps = o.at("steps");
    if (!steps.is_array()) fail(o.sub("steps"), "expected a list of step names");
    f.steps.clear();
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const auto p = o.sub("steps") + "[" + std::to_string(i) + "]";
      try {
        f.steps.push_back(features::feature_step_from_string(Obj::as<std::string>(steps[i], p)));
      } catch (const ConfigError& e) {
        if (std::string(e.what()).starts_with("config error")) throw;
        fail(p, e.what());
      }
    }
  }
  f.include_raw = o.get<bool>("include_raw", true);
  if (!f.engineered && o.has("steps")) fail(o.sub("steps"), "only valid with engineered: true");
  std::string registry;
  if (o.has("registry")) {
    registry = o.req<std::string>("registry");
    f.registry = std::filesystem::path(registry).is_absolute() ? std::filesystem::path(registry)
                                                               : base_dir / registry;
  }
  json steps = json::array();
  for (auto s : f.steps) steps.push_back(features::to_string(s));
  echo = {{"name", f.name},
          {"engineered", f.engineered},
          {"steps", f.engineered ? steps : json::array()},
          {"include_raw", f.include_raw},
          {"registry", f.registry ? json(registry) : json(nullptr)}};
  return f;
}

ModelConfig parse_model(const json& j, const std::string& path, std::uint64_t seed, json& echo) {
  const Obj o(j, path, {"kind", "hyperparams", "class_weighting", "grid", "grid_overrides"});
  ModelConfig m;
  try {
    m.spec.kind = learn::model_kind_from_string(o.req<std::string>("kind"));
  } catch (const ConfigError& e) {
    if (std::string(e.what()).starts_with("config error")) throw;
    fail(o.sub("kind"), e.what());
  }
  m.spec.seed = seed;
  try {
    if (o.has("hyperparams")) m.spec.hyperparams = hyperparams_from_json(o.at("hyperparams"));
    learn::validate_hyperparams(m.spec.kind, m.spec.hyperparams);
  } catch (const ConfigError& e) {
    if (std::string(e.what()).starts_with("config error")) throw;
    fail(o.sub("hyperparams"), e.what());
  }
  try {
    m.spec.class_weighting =
        learn::class_weighting_from_string(o.get<std::string>("class_weighting", "none"));
  } catch (const ConfigError& e) {
    if (std::string(e.what()).starts_with("config error")) throw;
    fail(o.sub("class_weighting"), e.what());
  }

  std::string grid_mode = "default";
  try {
    if (o.has("grid")) {
      const auto& g = o.at("grid");
      if (g.is_string()) {
        grid_mode = g.get<std::string>();
        if (grid_mode != "default" && grid_mode != "none") {
          fail(o.sub("grid"), "expected \"default\", \"none\" or an object of candidate lists");
        }
      } else {
        grid_mode = "custom";
        m.grid = grid_from_json(g);
      }
    }
    if (grid_mode == "default") m.grid = learn::default_grid(m.spec.kind);
    if (o.has("grid_overrides")) {
      const auto overrides = grid_from_json(o.at("grid_overrides"));
      m.grid = m.grid.with_overrides(overrides.axes());
    }
    if (!m.grid.empty()) learn::validate_grid(m.spec.kind, m.grid);
  } catch (const ConfigError& e) {
    if (std::string(e.what()).starts_with("config error")) throw;
    fail(o.sub("grid"), e.what());
  }
  echo = {{"kind", learn::to_string(m.spec.kind)},
          {"hyperparams", to_json(m.spec.hyperparams)},
          {"class_weighting", learn::to_string(m.spec.class_weighting)},
          {"grid", to_json(m.grid)}};
  return m;
}

}  // namespace

RunConfig parse_config_json(const json& j, const std::filesystem::path& base_dir) {
  const Obj root(j, "$", {"seed", "data", "feature_sets", "models", "protocol", "output_dir"});
  RunConfig c;
  c.seed = root.get<std::uint64_t>("seed", 42);
  json echo = json::object();
  echo["seed"] = c.seed;

  json data_echo;
  c.data = parse_data(root.at("data"), root.sub("data"), c.seed, base_dir, data_echo);
  echo["data"] = data_echo;

  json fs_echo = json::array();
  if (root.has("feature_sets")) {
    const auto& arr = root.at("feature_sets");
    if (!arr.is_array() || arr.empty()) fail(root.sub("feature_sets"), "expected a nonempty list");
    std::set<std::string> names;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      json e;
      auto f = parse_feature_set(arr[i], root.sub("feature_sets") + "[" + std::to_string(i) + "]",
                                 base_dir, e);
      if (!names.insert(f.name).second) {
        fail(root.sub("feature_sets"), "duplicate feature set name '" + f.name + "'");
      }
      if (f.engineered && std::holds_alternative<GaussianSource>(c.data)) {
        fail(root.sub("feature_sets") + "[" + std::to_string(i) + "]",
             "engineered features need regional volumes (synthetic_volumes or csv data)");
      }
      c.feature_sets.push_back(std::move(f));
      fs_echo.push_back(std::move(e));
    }
  } else {
    c.feature_sets.push_back({"original", false, {}, true, std::nullopt});
    fs_echo.push_back({{"name", "original"}, {"engineered", false}, {"steps", json::array()},
                       {"include_raw", true}, {"registry", nullptr}});
  }
  echo["feature_sets"] = fs_echo;

  const auto& models = root.at("models");
  if (!models.is_array() || models.empty()) fail(root.sub("models"), "expected a nonempty list");
  json m_echo = json::array();
  std::set<std::string> kinds;
  for (std::size_t i = 0; i < models.size(); ++i) {
    json e;
    auto m = parse_model(models[i], root.sub("models") + "[" + std::to_string(i) + "]", c.seed, e);
    if (!kinds.insert(std::string(learn::to_string(m.spec.kind))).second) {
      fail(root.sub("models"), "model kind '" + std::string(learn::to_string(m.spec.kind)) +
                                   "' listed twice");
    }
    c.models.push_back(std::move(m));
    m_echo.push_back(std::move(e));
  }
  echo["models"] = m_echo;

  const json empty = json::object();
  const Obj p(root.has("protocol") ? root.at("protocol") : empty, root.sub("protocol"),
              {"strategies", "outer_k", "inner_k", "repeats", "test_fraction", "threshold_grid",
               "calibration", "fixed_threshold", "ece_bins"});
  if (p.has("strategies")) {
    const auto& arr = p.at("strategies");
    if (!arr.is_array() || arr.empty()) fail(p.sub("strategies"), "expected a nonempty list");
    std::set<protocol::Strategy> seen;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto path = p.sub("strategies") + "[" + std::to_string(i) + "]";
      protocol::Strategy s{};
      try {
        s = protocol::strategy_from_string(Obj::as<std::string>(arr[i], path));
      } catch (const ConfigError& e) {
        if (std::string(e.what()).starts_with("config error")) throw;
        fail(path, e.what());
      }
      if (!seen.insert(s).second) fail(path, "strategy listed twice");
      c.strategies.push_back(s);
    }
  } else {
    c.strategies = {protocol::Strategy::nested_calibrated};
  }
  auto& pc = c.protocol;
  pc.seed = c.seed;
  pc.outer_k = positive_int(p, "outer_k", 5, 2);
  pc.inner_k = positive_int(p, "inner_k", 3, 2);
  pc.repeats = positive_int(p, "repeats", 20, 1);
  pc.test_fraction = fraction(p, "test_fraction", 0.2);
  if (p.has("threshold_grid")) {
    const auto& g = p.at("threshold_grid");
    if (!g.is_array() || g.empty()) fail(p.sub("threshold_grid"), "expected a nonempty list");
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto path = p.sub("threshold_grid") + "[" + std::to_string(i) + "]";
      const double t = Obj::as<double>(g[i], path);
      if (!(t >= 0.0 && t <= 1.0)) fail(path, "thresholds must lie in [0, 1]");
      pc.threshold_grid.push_back(t);
    }
  }
  const auto calibration = p.get<std::string>("calibration", "sigmoid");
  if (calibration != "sigmoid" && calibration != "none") {
    fail(p.sub("calibration"), "expected \"sigmoid\" or \"none\"");
  }
  pc.calibrate = calibration == "sigmoid";
  pc.fixed_threshold = p.get<double>("fixed_threshold", 0.5);
  if (!(pc.fixed_threshold >= 0.0 && pc.fixed_threshold <= 1.0)) {
    fail(p.sub("fixed_threshold"), "must lie in [0, 1]");
  }
  pc.ece_bins = positive_int(p, "ece_bins", 10);
  json strategies = json::array();
  for (auto s : c.strategies) strategies.push_back(protocol::to_string(s));
  echo["protocol"] = {{"strategies", strategies},
                      {"outer_k", pc.outer_k},
                      {"inner_k", pc.inner_k},
                      {"repeats", pc.repeats},
                      {"test_fraction", pc.test_fraction},
                      {"threshold_grid", pc.thresholds()},
                      {"calibration", calibration},
                      {"fixed_threshold", pc.fixed_threshold},
                      {"ece_bins", pc.ece_bins}};

  const auto out = root.get<std::string>("output_dir", "report");
  c.output_dir = out;
  echo["output_dir"] = out;
  c.echo = std::move(echo);
  return c;
}

RunConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config_json(j, base_dir);
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  auto base = path.parent_path();
  if (base.empty()) base = ".";
  return parse_config_text(buf.str(), base);
}

}  // namespace ncv::report
