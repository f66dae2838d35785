#include "speaq/grouping.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "speaq/errors.hpp"

namespace speaq {

FrequencyTable FrequencyTable::from_counts(std::vector<std::pair<int, std::int64_t>> counts) {
  FrequencyTable table;
  std::int64_t total = 0;
  std::unordered_map<int, int> seen;
  for (const auto& [id, count] : counts) {
    if (count < 0)
      throw ConfigError("FrequencyTable: negative count for predicate " + std::to_string(id));
    if (!seen.emplace(id, 1).second)
      throw ConfigError("FrequencyTable: duplicate predicate id " + std::to_string(id));
    total += count;
  }
  if (total <= 0) throw ConfigError("FrequencyTable: total count must be positive");
  table.counts_ = std::move(counts);
  table.total_ = total;
  return table;
}

std::vector<std::pair<int, double>> FrequencyTable::proportions() const {
  std::vector<std::pair<int, double>> out;
  out.reserve(counts_.size());
  const double total = static_cast<double>(total_);
  for (const auto& [id, count] : counts_) out.emplace_back(id, static_cast<double>(count) / total);
  return out;
}

PredicateGrouping::PredicateGrouping(std::vector<std::vector<int>> groups,
                                     std::vector<double> group_freq)
    : groups_(std::move(groups)), group_freq_(std::move(group_freq)) {
  if (groups_.empty()) throw ConfigError("PredicateGrouping: no groups");
  if (groups_.size() != group_freq_.size())
    throw LengthMismatchError("PredicateGrouping: groups and group_freq differ in length");
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    if (groups_[g].empty())
      throw EmptyGroupError("PredicateGrouping: group " + std::to_string(g) + " is empty");
    for (int id : groups_[g]) {
      if (!group_by_id_.emplace(id, static_cast<int>(g)).second)
        throw ConfigError("PredicateGrouping: predicate " + std::to_string(id) +
                          " appears in more than one group");
    }
  }
}

int PredicateGrouping::group_of(int predicate_id) const {
  const auto it = group_by_id_.find(predicate_id);
  if (it == group_by_id_.end())
    throw UnknownIdError("predicate id " + std::to_string(predicate_id) +
                         " belongs to no group");
  return it->second;
}

PredicateGrouping group_predicates(const FrequencyTable& freq, int n_g) {
  return group_predicates(freq.proportions(), n_g);
}

PredicateGrouping group_predicates(std::vector<std::pair<int, double>> proportions, int n_g) {
  if (n_g < 1) throw ConfigError("group_predicates: n_g must be >= 1");
  if (static_cast<int>(proportions.size()) < n_g)
    throw EmptyGroupError("group_predicates: fewer predicates than groups");

  // Descending proportion, ties by ascending id (stable over id order).
  std::stable_sort(proportions.begin(), proportions.end(),
                   [](const auto& a, const auto& b) {
                     if (a.second != b.second) return a.second > b.second;
                     return a.first < b.first;
                   });

  std::vector<std::vector<int>> groups(static_cast<std::size_t>(n_g));
  std::vector<double> group_freq(static_cast<std::size_t>(n_g), 0.0);

  int current = 0;
  for (const auto& [id, proportion] : proportions) {
    if (current < n_g - 1 && group_freq[current] > std::pow(0.5, current + 1)) {
      ++current;
    }
    groups[current].push_back(id);
    group_freq[current] += proportion;
  }

  for (int g = 0; g < n_g; ++g) {
    if (groups[g].empty())
      throw EmptyGroupError("group_predicates: distribution fills only " + std::to_string(g) +
                            " of " + std::to_string(n_g) + " groups; lower n_g");
  }
  return PredicateGrouping(std::move(groups), std::move(group_freq));
}

QueryGrouping::QueryGrouping(std::vector<int> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) throw ConfigError("QueryGrouping: no groups");
  offsets_.assign(counts_.size() + 1, 0);
  for (std::size_t g = 0; g < counts_.size(); ++g) {
    if (counts_[g] < 0) throw ConfigError("QueryGrouping: negative query count");
    offsets_[g + 1] = offsets_[g] + counts_[g];
  }
  total_ = offsets_.back();
}

std::pair<int, int> QueryGrouping::range(int group) const {
  if (group < 0 || group >= group_count())
    throw UnknownIdError("query group " + std::to_string(group) + " out of range");
  return {offsets_[group], offsets_[group + 1]};
}

int QueryGrouping::group_of(int query_index) const {
  if (query_index < 0 || query_index >= total_)
    throw UnknownIdError("query index " + std::to_string(query_index) + " out of range");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), query_index);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

QueryGrouping group_queries(const PredicateGrouping& pg, int n_q) {
  const int n_g = pg.group_count();
  if (n_q < n_g) throw ConfigError("group_queries: n_q must be >= the group count");

  std::vector<int> counts(static_cast<std::size_t>(n_g), 0);
  int assigned = 0;
  for (int g = 0; g + 1 < n_g; ++g) {
    counts[g] = static_cast<int>(std::floor(n_q * pg.group_freq()[g]));
    assigned += counts[g];
  }
  counts[n_g - 1] = n_q - assigned;  // last group absorbs the remainder
  return QueryGrouping(std::move(counts));
}

double grouping_cost(std::optional<int> gt_group, int query_group) {
  if (!gt_group.has_value() || *gt_group == query_group) return 0.0;
  return kForbidden;
}

}  // namespace speaq
