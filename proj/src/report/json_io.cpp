#include "ncv/report/json_io.hpp"

#include "ncv/core/error.hpp"

namespace ncv::report {

namespace {

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> opt_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

}  // namespace

json to_json(const learn::ParamValue& v) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else {
          return x;
        }
      },
      v);
}

learn::ParamValue param_from_json(const json& j) {
  if (j.is_null()) return std::monostate{};
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  throw ConfigError("hyperparameter values must be null, boolean, number or string");
}

json to_json(const learn::HyperParams& p) {
  json j = json::object();
  for (const auto& [k, v] : p) j[k] = to_json(v);
  return j;
}

learn::HyperParams hyperparams_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("hyperparameters must be an object");
  learn::HyperParams p;
  for (const auto& [k, v] : j.items()) p[k] = param_from_json(v);
  return p;
}

json to_json(const learn::ModelSpec& spec) {
  return {{"kind", learn::to_string(spec.kind)},
          {"hyperparams", to_json(spec.hyperparams)},
          {"class_weighting", learn::to_string(spec.class_weighting)},
          {"seed", spec.seed}};
}

learn::ModelSpec model_spec_from_json(const json& j) {
  learn::ModelSpec s;
  s.kind = learn::model_kind_from_string(j.at("kind").get<std::string>());
  s.hyperparams = hyperparams_from_json(j.at("hyperparams"));
  s.class_weighting = learn::class_weighting_from_string(j.at("class_weighting").get<std::string>());
  s.seed = j.at("seed").get<std::uint64_t>();
  return s;
}

json to_json(const learn::HyperParamGrid& grid) {
  json j = json::object();
  for (const auto& [name, values] : grid.axes()) {
    json arr = json::array();
    for (const auto& v : values) arr.push_back(to_json(v));
    j[name] = std::move(arr);
  }
  return j;
}

learn::HyperParamGrid grid_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("grid must be an object of candidate lists");
  std::map<std::string, std::vector<learn::ParamValue>> axes;
  for (const auto& [name, values] : j.items()) {
    if (!values.is_array()) throw ConfigError("grid axis '" + name + "' must be a list");
    auto& axis = axes[name];
    for (const auto& v : values) axis.push_back(param_from_json(v));
  }
  if (axes.empty()) return learn::HyperParamGrid{};
  return learn::HyperParamGrid(std::move(axes));
}

json to_json(const calib::SigmoidCalibrator& cal) {
  return {{"a", cal.a},
          {"b", cal.b},
          {"nll", cal.nll},
          {"iterations", cal.iterations},
          {"converged", cal.converged},
          {"nll_trace", cal.nll_trace}};
}

calib::SigmoidCalibrator calibrator_from_json(const json& j) {
  calib::SigmoidCalibrator c;
  c.a = j.at("a").get<double>();
  c.b = j.at("b").get<double>();
  c.nll = j.at("nll").get<double>();
  c.iterations = j.at("iterations").get<int>();
  c.converged = j.at("converged").get<bool>();
  c.nll_trace = j.at("nll_trace").get<std::vector<double>>();
  return c;
}

json to_json(const metrics::RepeatSummary& s) {
  return {{"values", s.values}, {"mean", s.mean}, {"median", s.median},
          {"sd", opt(s.sd)},    {"iqr", opt(s.iqr)}};
}

metrics::RepeatSummary repeat_summary_from_json(const json& j) {
  metrics::RepeatSummary s;
  s.values = j.at("values").get<std::vector<double>>();
  s.mean = j.at("mean").get<double>();
  s.median = j.at("median").get<double>();
  s.sd = opt_from<double>(j.at("sd"));
  s.iqr = opt_from<double>(j.at("iqr"));
  return s;
}

json to_json(const protocol::ProtocolConfig& c) {
  return {{"strategy", protocol::to_string(c.strategy)},
          {"outer_k", c.outer_k},
          {"inner_k", c.inner_k},
          {"repeats", c.repeats},
          {"test_fraction", c.test_fraction},
          {"model", to_json(c.model)},
          {"grid", to_json(c.grid)},
          {"threshold_grid", c.threshold_grid},
          {"calibrate", c.calibrate},
          {"fixed_threshold", c.fixed_threshold},
          {"ece_bins", c.ece_bins},
          {"seed", c.seed}};
}

protocol::ProtocolConfig protocol_config_from_json(const json& j) {
  protocol::ProtocolConfig c;
  c.strategy = protocol::strategy_from_string(j.at("strategy").get<std::string>());
  c.outer_k = j.at("outer_k").get<int>();
  c.inner_k = j.at("inner_k").get<int>();
  c.repeats = j.at("repeats").get<int>();
  c.test_fraction = j.at("test_fraction").get<double>();
  c.model = model_spec_from_json(j.at("model"));
  c.grid = grid_from_json(j.at("grid"));
  c.threshold_grid = j.at("threshold_grid").get<std::vector<double>>();
  c.calibrate = j.at("calibrate").get<bool>();
  c.fixed_threshold = j.at("fixed_threshold").get<double>();
  c.ece_bins = j.at("ece_bins").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

json to_json(const protocol::FoldResult& f) {
  const auto& m = f.test_metrics;
  return {{"fold_id", f.fold_id},
          {"chosen_hyperparams", to_json(f.chosen_hyperparams)},
          {"inner_ap", opt(f.inner_ap)},
          {"calibrator", f.calibrator ? to_json(*f.calibrator) : json(nullptr)},
          {"t_star", f.t_star},
          {"test_metrics",
           {{"ba", m.ba}, {"auc_roc", m.auc_roc}, {"auprc", m.auprc}, {"brier", m.brier}, {"ece", m.ece}}},
          {"importances", opt(f.importances)},
          {"converged", f.converged},
          {"n_train", f.n_train},
          {"test_rows", f.test_rows},
          {"test_labels", f.test_labels},
          {"test_scores", f.test_scores},
          {"test_probabilities", f.test_probabilities}};
}

protocol::FoldResult fold_result_from_json(const json& j) {
  protocol::FoldResult f;
  f.fold_id = j.at("fold_id").get<int>();
  f.chosen_hyperparams = hyperparams_from_json(j.at("chosen_hyperparams"));
  f.inner_ap = opt_from<double>(j.at("inner_ap"));
  if (!j.at("calibrator").is_null()) f.calibrator = calibrator_from_json(j.at("calibrator"));
  f.t_star = j.at("t_star").get<double>();
  const auto& m = j.at("test_metrics");
  f.test_metrics = {m.at("ba").get<double>(), m.at("auc_roc").get<double>(),
                    m.at("auprc").get<double>(), m.at("brier").get<double>(),
                    m.at("ece").get<double>()};
  f.importances = opt_from<std::vector<double>>(j.at("importances"));
  f.converged = j.at("converged").get<bool>();
  f.n_train = j.at("n_train").get<std::size_t>();
  f.test_rows = j.at("test_rows").get<std::vector<std::size_t>>();
  f.test_labels = j.at("test_labels").get<std::vector<int>>();
  f.test_scores = j.at("test_scores").get<std::vector<double>>();
  f.test_probabilities = j.at("test_probabilities").get<std::vector<double>>();
  return f;
}

json to_json(const data::LedgerVerdict& v) {
  json violations = json::array();
  for (const auto& x : v.violations) {
    violations.push_back({{"stage", data::to_string(x.stage)}, {"fold", x.fold}, {"index", x.index}});
  }
  return {{"clean", v.clean},
          {"violations", std::move(violations)},
          {"ordering_violations", v.ordering_violations}};
}

namespace {
data::Stage stage_from_json(const json& j) {
  const auto s = data::stage_from_string(j.get<std::string>());
  if (!s) throw ConfigError("unknown ledger stage '" + j.get<std::string>() + "'");
  return *s;
}
}  // namespace

data::LedgerVerdict verdict_from_json(const json& j) {
  data::LedgerVerdict v;
  v.clean = j.at("clean").get<bool>();
  for (const auto& x : j.at("violations")) {
    v.violations.push_back(
        {stage_from_json(x.at("stage")), x.at("fold").get<int>(), x.at("index").get<std::size_t>()});
  }
  v.ordering_violations = j.at("ordering_violations").get<std::vector<int>>();
  return v;
}

json to_json(const data::LedgerEntry& e) {
  return {{"stage", data::to_string(e.stage)},
          {"fold", e.fold},
          {"candidate", e.candidate},
          {"sequence", e.sequence},
          {"indices", e.indices}};
}

data::LedgerEntry ledger_entry_from_json(const json& j) {
  data::LedgerEntry e;
  e.stage = stage_from_json(j.at("stage"));
  e.fold = j.at("fold").get<int>();
  e.candidate = j.at("candidate").get<int>();
  e.sequence = j.at("sequence").get<std::size_t>();
  e.indices = j.at("indices").get<std::vector<std::size_t>>();
  return e;
}

json to_json(const protocol::EvaluationReport& r) {
  json folds = json::array();
  for (const auto& f : r.folds) folds.push_back(to_json(f));
  json metrics = json::object();
  for (const auto& [name, s] : r.metrics) metrics[name] = to_json(s);
  json imps = json::array();
  for (const auto& i : r.importances) imps.push_back({{"feature", i.feature}, {"importance", i.importance}});
  return {{"strategy", protocol::to_string(r.strategy)},
          {"config", to_json(r.config)},
          {"feature_names", r.feature_names},
          {"folds", std::move(folds)},
          {"metrics", std::move(metrics)},
          {"thresholds", to_json(r.thresholds)},
          {"pooled_auc_raw", r.pooled_auc_raw},
          {"pooled_auc_calibrated", r.pooled_auc_calibrated},
          {"verdict", to_json(r.verdict)},
          {"ledger", {{"entries", r.ledger.entries}, {"rows_by_stage", r.ledger.rows_by_stage}}},
          {"importances", std::move(imps)},
          {"warnings", r.warnings}};
}

protocol::EvaluationReport report_from_json(const json& j) {
  protocol::EvaluationReport r;
  r.strategy = protocol::strategy_from_string(j.at("strategy").get<std::string>());
  r.config = protocol_config_from_json(j.at("config"));
  r.feature_names = j.at("feature_names").get<std::vector<std::string>>();
  for (const auto& f : j.at("folds")) r.folds.push_back(fold_result_from_json(f));
  for (const auto& [name, s] : j.at("metrics").items()) r.metrics[name] = repeat_summary_from_json(s);
  r.thresholds = repeat_summary_from_json(j.at("thresholds"));
  r.pooled_auc_raw = j.at("pooled_auc_raw").get<double>();
  r.pooled_auc_calibrated = j.at("pooled_auc_calibrated").get<double>();
  r.verdict = verdict_from_json(j.at("verdict"));
  r.ledger.entries = j.at("ledger").at("entries").get<std::size_t>();
  r.ledger.rows_by_stage = j.at("ledger").at("rows_by_stage").get<std::map<std::string, std::size_t>>();
  for (const auto& i : j.at("importances")) {
    r.importances.push_back({i.at("feature").get<std::string>(), i.at("importance").get<double>()});
  }
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

}  // namespace ncv::report
