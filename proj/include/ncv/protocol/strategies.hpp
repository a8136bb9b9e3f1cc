#pragma once

#include "ncv/core/dataset.hpp"
#include "ncv/core/folds.hpp"
#include "ncv/core/ledger.hpp"
#include "ncv/protocol/config.hpp"
#include "ncv/protocol/evaluation.hpp"

namespace ncv::protocol {

// Outer plan shared by every cross-validated strategy with the same root
// seed and k. Throws DataError when infeasible.
data::FoldPlan outer_plan(const std::vector<int>& labels, const ProtocolConfig& config);

// Per outer fold: (1) grid search on outer-train, (2) held-out scores and
// Platt fit on outer-train, (3) final fit on outer-train, (4) threshold from
// the calibrated held-out scores, (5) scoring of the outer-test rows.
// Outer folds run on up to `workers` threads; results do not depend on it.
EvaluationReport run_nested_cv(const data::Dataset& data, const ProtocolConfig& config,
                               data::AccessLedger& ledger, int workers = 1);
EvaluationReport run_nested_cv(const data::Dataset& data, const ProtocolConfig& config,
                               int workers = 1);

// Single k-fold loop. The threshold (and with naive_cv_grid the candidate)
// is chosen on the same pooled out-of-fold predictions that are reported.
EvaluationReport run_naive_cv(const data::Dataset& data, const ProtocolConfig& config,
                              data::AccessLedger& ledger, int workers = 1);
EvaluationReport run_naive_cv(const data::Dataset& data, const ProtocolConfig& config,
                              int workers = 1);

// Repeated stratified train/test splits at a fixed threshold; holdout_grid
// tunes on the training side.
EvaluationReport run_holdout(const data::Dataset& data, const ProtocolConfig& config,
                             data::AccessLedger& ledger, int workers = 1);
EvaluationReport run_holdout(const data::Dataset& data, const ProtocolConfig& config,
                             int workers = 1);

// Dispatches on config.strategy.
EvaluationReport run_strategy(const data::Dataset& data, const ProtocolConfig& config,
                              int workers = 1);

}  // namespace ncv::protocol
