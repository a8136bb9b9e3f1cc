#include "ncv/core/ledger.hpp"

#include <algorithm>
#include <array>
#include <iterator>
#include <tuple>

namespace ncv::data {
namespace {

constexpr std::array<std::string_view, 5> kStageNames = {
    "tuning", "calibration", "threshold_search", "final_fit", "outer_test_score"};

bool is_training_side(Stage stage) { return stage != Stage::outer_test_score; }

}  // namespace

std::string_view to_string(Stage stage) { return kStageNames[static_cast<std::size_t>(stage)]; }

std::optional<Stage> stage_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kStageNames.size(); ++i) {
    if (kStageNames[i] == name) return static_cast<Stage>(i);
  }
  return std::nullopt;
}

void AccessLedger::record(Stage stage, int fold, int candidate, std::vector<std::size_t> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  std::lock_guard lock(mutex_);
  const std::size_t seq = next_sequence_[fold]++;
  entries_.push_back({stage, fold, candidate, seq, std::move(indices)});
}

std::vector<LedgerEntry> AccessLedger::entries() const {
  std::vector<LedgerEntry> out;
  {
    std::lock_guard lock(mutex_);
    out = entries_;
  }
  std::sort(out.begin(), out.end(), [](const LedgerEntry& a, const LedgerEntry& b) {
    return std::tie(a.stage, a.fold, a.candidate, a.sequence) <
           std::tie(b.stage, b.fold, b.candidate, b.sequence);
  });
  return out;
}

std::size_t AccessLedger::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

LedgerVerdict ledger_assert_clean(const AccessLedger& ledger, const FoldPlan& plan) {
  return ledger_assert_clean(ledger.entries(), plan.folds);
}

LedgerVerdict ledger_assert_clean(const std::vector<LedgerEntry>& entries,
                                  const std::vector<Fold>& folds) {
  LedgerVerdict verdict;
  const int n_folds = static_cast<int>(folds.size());
  std::vector<std::optional<std::size_t>> last_threshold(folds.size());
  std::vector<std::optional<std::size_t>> first_test(folds.size());

  for (const auto& e : entries) {
    if (e.fold < 0 || e.fold >= n_folds) continue;
    const auto f = static_cast<std::size_t>(e.fold);
    if (e.stage == Stage::threshold_search) {
      last_threshold[f] = std::max(last_threshold[f].value_or(0), e.sequence);
    }
    if (e.stage == Stage::outer_test_score) {
      first_test[f] = std::min(first_test[f].value_or(e.sequence), e.sequence);
    }
    if (!is_training_side(e.stage)) continue;
    const auto& test = folds[f].test;
    std::vector<std::size_t> overlap;
    std::set_intersection(e.indices.begin(), e.indices.end(), test.begin(), test.end(),
                          std::back_inserter(overlap));
    for (std::size_t idx : overlap) verdict.violations.push_back({e.stage, e.fold, idx});
  }
  for (std::size_t f = 0; f < folds.size(); ++f) {
    if (last_threshold[f] && first_test[f] && *last_threshold[f] > *first_test[f]) {
      verdict.ordering_violations.push_back(static_cast<int>(f));
    }
  }
  verdict.clean = verdict.violations.empty() && verdict.ordering_violations.empty();
  return verdict;
}

}  // namespace ncv::data
