#pragma once

#include "ncv/learners/grid.hpp"
#include "ncv/learners/model_spec.hpp"
#include "ncv/protocol/config.hpp"
#include "ncv/protocol/evaluation.hpp"

#include "json.hpp"

namespace ncv::report {

using json = nlohmann::json;

// Full-precision JSON forms. from_* functions are exact inverses of to_*:
// every numeric field survives a dump/parse cycle bit for bit.
json to_json(const learn::ParamValue& v);
learn::ParamValue param_from_json(const json& j);

json to_json(const learn::HyperParams& p);
learn::HyperParams hyperparams_from_json(const json& j);

json to_json(const learn::ModelSpec& spec);
learn::ModelSpec model_spec_from_json(const json& j);

json to_json(const learn::HyperParamGrid& grid);
learn::HyperParamGrid grid_from_json(const json& j);

json to_json(const calib::SigmoidCalibrator& cal);
calib::SigmoidCalibrator calibrator_from_json(const json& j);

json to_json(const metrics::RepeatSummary& s);
metrics::RepeatSummary repeat_summary_from_json(const json& j);

json to_json(const protocol::ProtocolConfig& c);
protocol::ProtocolConfig protocol_config_from_json(const json& j);

json to_json(const protocol::FoldResult& f);
protocol::FoldResult fold_result_from_json(const json& j);

json to_json(const data::LedgerVerdict& v);
data::LedgerVerdict verdict_from_json(const json& j);

json to_json(const data::LedgerEntry& e);
data::LedgerEntry ledger_entry_from_json(const json& j);

json to_json(const protocol::EvaluationReport& r);
protocol::EvaluationReport report_from_json(const json& j);

}  // namespace ncv::report
