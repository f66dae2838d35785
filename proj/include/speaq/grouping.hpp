#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "speaq/assignment.hpp"

namespace speaq {

/// Predicate frequency table; proportions are count / total.
class FrequencyTable {
 public:
  /// Entries are (predicate_id, count). Ids must be unique, counts
  /// nonnegative, and the total positive.
  static FrequencyTable from_counts(std::vector<std::pair<int, std::int64_t>> counts);

  const std::vector<std::pair<int, std::int64_t>>& counts() const { return counts_; }
  std::int64_t total() const { return total_; }

  /// (predicate_id, proportion) in the stored id order.
  std::vector<std::pair<int, double>> proportions() const;

 private:
  std::vector<std::pair<int, std::int64_t>> counts_;
  std::int64_t total_{0};
};

/// Disjoint predicate groups with their frequency mass.
class PredicateGrouping {
 public:
  /// Direct construction from explicit groups, e.g. when loading a grouping
  /// file or entering published per-group totals. Validates that the groups
  /// are disjoint and nonempty and that group_freq matches in length.
  PredicateGrouping(std::vector<std::vector<int>> groups, std::vector<double> group_freq);

  int group_count() const { return static_cast<int>(groups_.size()); }
  const std::vector<std::vector<int>>& groups() const { return groups_; }
  const std::vector<double>& group_freq() const { return group_freq_; }

  /// Group index containing the predicate id; throws UnknownIdError.
  int group_of(int predicate_id) const;

 private:
  std::vector<std::vector<int>> groups_;
  std::vector<double> group_freq_;
  std::unordered_map<int, int> group_by_id_;
};

/// Frequency-based grouping: a single pass over predicates sorted by
/// proportion descending (ties by ascending id) fills group i while its
/// running mass stays <= (1/2)^i, then moves on; the last group absorbs the
/// remainder. Throws EmptyGroupError when a trailing group stays empty.
PredicateGrouping group_predicates(const FrequencyTable& freq, int n_g);

/// Same algorithm over precomputed (predicate_id, proportion) pairs.
PredicateGrouping group_predicates(std::vector<std::pair<int, double>> proportions, int n_g);

/// Contiguous query-index ranges per group.
class QueryGrouping {
 public:
  explicit QueryGrouping(std::vector<int> counts);

  int group_count() const { return static_cast<int>(counts_.size()); }
  const std::vector<int>& counts() const { return counts_; }
  int total_queries() const { return total_; }

  /// Half-open index range [begin, end) of a group.
  std::pair<int, int> range(int group) const;

  /// Group index containing the query index; throws UnknownIdError.
  int group_of(int query_index) const;

 private:
  std::vector<int> counts_;
  std::vector<int> offsets_;  // prefix sums, size group_count() + 1
  int total_{0};
};

/// Proportional query grouping: group k < N_g - 1 receives
/// floor(n_q * group_freq[k]) queries and the last group the remainder.
QueryGrouping group_queries(const PredicateGrouping& pg, int n_q);

/// 0 when the GT is null or the groups match, kForbidden otherwise.
double grouping_cost(std::optional<int> gt_group, int query_group);

}  // namespace speaq
