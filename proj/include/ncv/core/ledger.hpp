#pragma once

#include "ncv/core/folds.hpp"

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ncv::data {

enum class Stage { tuning, calibration, threshold_search, final_fit, outer_test_score };

std::string_view to_string(Stage stage);
std::optional<Stage> stage_from_string(std::string_view name);

struct LedgerEntry {
  Stage stage = Stage::tuning;
  int fold = 0;
  int candidate = -1;
  // Position of this access among all accesses of the same fold; accesses
  // within a fold are issued by one thread so the order is deterministic.
  std::size_t sequence = 0;
  std::vector<std::size_t> indices;  // sorted, unique
};

// Append-only record of which sample rows each protocol stage touched.
// Appends are thread-safe; entries() returns a total order sorted by
// (stage, fold, candidate, sequence) so reports do not depend on scheduling.
class AccessLedger {
 public:
  AccessLedger() = default;
  AccessLedger(const AccessLedger&) = delete;
  AccessLedger& operator=(const AccessLedger&) = delete;

  void record(Stage stage, int fold, int candidate, std::vector<std::size_t> indices);
  std::vector<LedgerEntry> entries() const;
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::vector<LedgerEntry> entries_;
  std::map<int, std::size_t> next_sequence_;
};

struct LeakViolation {
  Stage stage = Stage::tuning;
  int fold = 0;
  std::size_t index = 0;
  friend bool operator==(const LeakViolation&, const LeakViolation&) = default;
};

struct LedgerVerdict {
  bool clean = true;
  std::vector<LeakViolation> violations;
  // Folds whose outer-test rows were scored before the threshold was fixed.
  std::vector<int> ordering_violations;
};

// For every fold of the plan: rows logged under tuning, calibration,
// threshold_search or final_fit must be disjoint from that fold's test rows,
// and every threshold_search access must precede the first outer_test_score
// access. Entries whose fold id lies outside the plan are ignored.
LedgerVerdict ledger_assert_clean(const AccessLedger& ledger, const FoldPlan& plan);
LedgerVerdict ledger_assert_clean(const std::vector<LedgerEntry>& entries,
                                  const std::vector<Fold>& folds);

}  // namespace ncv::data
