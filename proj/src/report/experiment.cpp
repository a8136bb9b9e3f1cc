#include "ncv/report/experiment.hpp"

#include "ncv/core/csv.hpp"
#include "ncv/core/synthetic.hpp"
#include "ncv/features/registry.hpp"
#include "ncv/features/synthetic_volumes.hpp"
#include "ncv/features/volume_table.hpp"
#include "ncv/protocol/strategies.hpp"
#include "ncv/report/json_io.hpp"

#include <fstream>
#include <optional>
#include <system_error>

namespace ncv::report {

namespace {

constexpr int kFormatVersion = 1;

struct Ingested {
  // Set for the gaussian source and for CSV files without a TIV column.
  std::optional<data::Dataset> matrix;
  std::optional<features::RegionalVolumeTable> volumes;
  nlohmann::json summary;
  std::vector<std::string> warnings;
};

nlohmann::json dataset_summary(const data::Dataset& ds) {
  return {{"n_samples", ds.n_samples()},
          {"n_positive", ds.n_positive()},
          {"n_features", ds.n_features()}};
}

Ingested ingest(const RunConfig& config) {
  Ingested in;
  std::visit(
      [&](const auto& src) {
        using T = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<T, GaussianSource>) {
          in.matrix = data::make_synthetic(src.spec);
          in.summary = {{"source", "synthetic"}};
        } else if constexpr (std::is_same_v<T, VolumeSource>) {
          in.volumes = features::make_synthetic_volumes(src.spec);
          in.summary = {{"source", "synthetic_volumes"}};
        } else {
          auto loaded = data::load_csv(src.path, src.label_column, src.id_column, src.label_cutoff);
          nlohmann::json rejected = nlohmann::json::array();
          for (const auto& r : loaded.report.rejected) {
            rejected.push_back({{"line", r.line}, {"subject_id", r.subject_id}, {"reason", r.reason}});
          }
          in.summary = {{"source", "csv"},
                        {"rows_read", loaded.report.rows_read},
                        {"rejected", std::move(rejected)}};
          in.warnings = loaded.report.warnings;
          if (src.tiv_column) {
            std::optional<std::string_view> age;
            if (src.age_column) age = *src.age_column;
            in.volumes = features::RegionalVolumeTable::from_dataset(loaded.dataset, *src.tiv_column, age);
          } else {
            in.matrix = std::move(loaded.dataset);
          }
        }
      },
      config.data);
  return in;
}

struct BuiltFeatureSet {
  data::Dataset dataset;
  nlohmann::json summary;
  std::vector<std::string> warnings;
};

BuiltFeatureSet build_feature_set(const Ingested& in, const FeatureSetConfig& fs) {
  if (in.matrix) {
    if (fs.engineered) {
      throw ConfigError("feature set '" + fs.name +
                        "' is engineered but the data has no regional volumes (set csv.tiv_column)");
    }
    return {*in.matrix, dataset_summary(*in.matrix), {}};
  }
  features::FeatureRecipe recipe;
  if (fs.registry) recipe.registry = features::RegionRegistry::load(*fs.registry);
  if (fs.engineered) {
    recipe.steps = fs.steps;
    recipe.include_raw = fs.include_raw;
  } else {
    recipe.steps.clear();
    recipe.include_raw = true;
  }
  auto build = features::build_feature_matrix(*in.volumes, recipe);
  nlohmann::json summary = dataset_summary(build.dataset);
  nlohmann::json rejected = nlohmann::json::array();
  for (const auto& r : build.rejected) rejected.push_back({{"subject_id", r.subject_id}, {"reason", r.reason}});
  summary["rejected"] = std::move(rejected);
  summary["unregistered_regions"] = build.unregistered_regions;
  return {std::move(build.dataset), std::move(summary), std::move(build.warnings)};
}

protocol::EvaluationReport run_one(const data::Dataset& ds, const protocol::ProtocolConfig& pc,
                                   int workers, data::AccessLedger* ledger) {
  if (ledger == nullptr) return protocol::run_strategy(ds, pc, workers);
  switch (pc.strategy) {
    case protocol::Strategy::nested_calibrated:
      return protocol::run_nested_cv(ds, pc, *ledger, workers);
    case protocol::Strategy::naive_cv:
    case protocol::Strategy::naive_cv_grid:
      return protocol::run_naive_cv(ds, pc, *ledger, workers);
    case protocol::Strategy::holdout:
    case protocol::Strategy::holdout_grid:
      return protocol::run_holdout(ds, pc, *ledger, workers);
  }
  throw ProtocolError("unknown strategy");
}

bool is_cv(protocol::Strategy s) {
  return s == protocol::Strategy::nested_calibrated || s == protocol::Strategy::naive_cv ||
         s == protocol::Strategy::naive_cv_grid;
}

std::string run_stem(const RunRecord& r) {
  return slug(learn::to_string(r.model)) + "_" + slug(r.feature_set) + "_" +
         slug(protocol::to_string(r.report.strategy));
}

}  // namespace

std::string dump_report(const nlohmann::json& report) { return report.dump(2) + "\n"; }

ExperimentResult run_experiment(const RunConfig& config, const ExperimentOptions& options) {
  ExperimentResult result;

  Ingested in;
  try {
    in = ingest(config);
  } catch (const Error& e) {
    throw StageError("ingest", e.what());
  }
  result.warnings = in.warnings;

  std::vector<std::pair<std::string, BuiltFeatureSet>> sets;
  try {
    for (const auto& fs : config.feature_sets) sets.emplace_back(fs.name, build_feature_set(in, fs));
  } catch (const Error& e) {
    throw StageError("features", e.what());
  }

  nlohmann::json runs_json = nlohmann::json::array();
  nlohmann::json ledgers = nlohmann::json::object();
  for (const auto& [fs_name, built] : sets) {
    for (const auto& w : built.warnings) result.warnings.push_back(fs_name + ": " + w);
    for (const auto& model : config.models) {
      for (auto strategy : config.strategies) {
        protocol::ProtocolConfig pc = config.protocol;
        pc.strategy = strategy;
        pc.model = model.spec;
        pc.grid = pc.uses_grid() ? model.grid : learn::HyperParamGrid{};
        RunRecord rec{fs_name, model.spec.kind, {}};
        const std::string label = fs_name + " / " + std::string(learn::to_string(model.spec.kind)) +
                                  " / " + std::string(protocol::to_string(strategy));
        try {
          data::AccessLedger ledger;
          rec.report = run_one(built.dataset, pc, options.workers,
                               options.verify_ledger ? &ledger : nullptr);
          if (options.verify_ledger) {
            const auto entries = ledger.entries();
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& e : entries) arr.push_back(to_json(e));
            nlohmann::json audit = {{"entries", std::move(arr)}};
            if (is_cv(strategy)) {
              const auto plan = protocol::outer_plan(built.dataset.labels(), pc);
              const auto verdict = data::ledger_assert_clean(entries, plan.folds);
              audit["reaudit"] = to_json(verdict);
              if (verdict.clean != rec.report.verdict.clean) {
                throw ProtocolError("ledger re-audit disagrees with the recorded verdict");
              }
            }
            ledgers[run_stem(rec)] = std::move(audit);
          }
        } catch (const Error& e) {
          throw StageError("protocol", label + ": " + e.what());
        }
        for (const auto& w : rec.report.warnings) result.warnings.push_back(label + ": " + w);
        if (strategy == protocol::Strategy::nested_calibrated && !rec.report.verdict.clean) {
          result.ledger_clean = false;
        }
        runs_json.push_back({{"feature_set", fs_name},
                             {"model", learn::to_string(model.spec.kind)},
                             {"strategy", protocol::to_string(strategy)},
                             {"report", to_json(rec.report)}});
        result.runs.push_back(std::move(rec));
      }
    }
  }

  try {
    std::vector<std::string> fs_names;
    nlohmann::json fs_json = nlohmann::json::object();
    for (const auto& [name, built] : sets) {
      fs_names.push_back(name);
      fs_json[name] = built.summary;
    }

    nlohmann::json gaps = nlohmann::json::array();
    for (const auto& naive : result.runs) {
      if (naive.report.strategy != protocol::Strategy::naive_cv_grid) continue;
      for (const auto& nested : result.runs) {
        if (nested.report.strategy == protocol::Strategy::nested_calibrated &&
            nested.feature_set == naive.feature_set && nested.model == naive.model) {
          gaps.push_back({{"feature_set", naive.feature_set},
                          {"model", learn::to_string(naive.model)},
                          {"naive_minus_nested_ba",
                           naive.report.metrics.at("ba").mean - nested.report.metrics.at("ba").mean}});
        }
      }
    }

    result.report = {{"tool", "nestedcv"},
                     {"format_version", kFormatVersion},
                     {"config", config.echo},
                     {"data", in.summary},
                     {"feature_sets", std::move(fs_json)},
                     {"runs", std::move(runs_json)},
                     {"comparison", std::move(gaps)},
                     {"ledger_clean", result.ledger_clean},
                     {"warnings", result.warnings}};

    auto& files = result.files;
    files["report.json"] = dump_report(result.report);
    const auto primary = std::find(config.strategies.begin(), config.strategies.end(),
                                   protocol::Strategy::nested_calibrated) != config.strategies.end()
                             ? protocol::Strategy::nested_calibrated
                             : config.strategies.front();
    files["model_table.csv"] = model_table_csv(result.runs, fs_names, primary);
    if (config.strategies.size() >= 2) {
      files["strategy_matrix.csv"] = strategy_matrix_csv(result.runs, fs_names, config.strategies);
    }
    for (const auto& r : result.runs) {
      const std::string stem = run_stem(r);
      files["folds_" + stem + ".csv"] = fold_table_csv(r.report);
      files["roc_" + stem + ".csv"] = roc_csv(r.report);
      files["reliability_" + stem + ".csv"] = reliability_csv(r.report);
      if (!r.report.importances.empty()) files["importances_" + stem + ".csv"] = importance_csv(r.report);
    }
    if (options.verify_ledger) files["ledger.json"] = ledgers.dump(2) + "\n";
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError("report", e.what());
  }
  return result;
}

void write_outputs(const std::filesystem::path& dir,
                   const std::map<std::string, std::string>& files) {
  namespace fs = std::filesystem;
  std::vector<fs::path> written;
  auto cleanup = [&] {
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
  };
  try {
    fs::create_directories(dir);
    std::vector<std::pair<fs::path, fs::path>> staged;
    for (const auto& [name, contents] : files) {
      const fs::path tmp = dir / (name + ".tmp");
      written.push_back(tmp);
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << contents;
      out.close();
      if (!out) throw DataError("cannot write " + tmp.string());
      staged.emplace_back(tmp, dir / name);
    }
    for (const auto& [tmp, target] : staged) {
      fs::rename(tmp, target);
      written.push_back(target);
    }
  } catch (const StageError&) {
    cleanup();
    throw;
  } catch (const std::exception& e) {
    cleanup();
    throw StageError("report", e.what());
  }
}

}  // namespace ncv::report
