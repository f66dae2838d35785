#include <doctest.h>

#include <cmath>
#include <set>

#include "speaq/errors.hpp"
#include "speaq/grouping.hpp"
#include "speaq/rng.hpp"

using speaq::FrequencyTable;
using speaq::group_predicates;
using speaq::group_queries;
using speaq::grouping_cost;
using speaq::PredicateGrouping;
using speaq::QueryGrouping;

namespace {

PredicateGrouping from_proportions(std::vector<double> proportions, int n_g) {
  std::vector<std::pair<int, double>> pairs;
  for (std::size_t i = 0; i < proportions.size(); ++i)
    pairs.emplace_back(static_cast<int>(i), proportions[i]);
  return group_predicates(std::move(pairs), n_g);
}

}  // namespace

TEST_CASE("grouping walks the sorted proportions against halving thresholds") {
  // 0.6 overflows group 0 after one predicate; 0.2 + 0.1 stay under 0.25
  // because the check runs before adding; the rest lands in the last group.
  const PredicateGrouping pg = from_proportions({0.6, 0.2, 0.1, 0.05, 0.05}, 3);
  CHECK(pg.groups() == std::vector<std::vector<int>>{{0}, {1, 2}, {3, 4}});
  CHECK(pg.group_freq()[0] == doctest::Approx(0.6));
  CHECK(pg.group_freq()[1] == doctest::Approx(0.3));
  CHECK(pg.group_freq()[2] == doctest::Approx(0.1));
}

TEST_CASE("n_g = 1 puts every predicate into one group") {
  const PredicateGrouping pg = from_proportions({0.4, 0.3, 0.2, 0.1}, 1);
  CHECK(pg.group_count() == 1);
  CHECK(pg.groups()[0] == std::vector<int>{0, 1, 2, 3});
  CHECK(pg.group_freq()[0] == doctest::Approx(1.0));
}

TEST_CASE("the running-sum check is non-strict") {
  // 0.5 <= 0.5 holds, so the second predicate still joins group 0.
  const PredicateGrouping pg = from_proportions({0.5, 0.25, 0.125, 0.125}, 2);
  CHECK(pg.groups() == std::vector<std::vector<int>>{{0, 1}, {2, 3}});
}

TEST_CASE("equal proportions break ties by ascending id") {
  const PredicateGrouping pg = from_proportions({0.25, 0.25, 0.25, 0.25}, 2);
  CHECK(pg.groups() == std::vector<std::vector<int>>{{0, 1, 2}, {3}});
}

TEST_CASE("a distribution that cannot fill the groups is an error") {
  CHECK_THROWS_AS(from_proportions({0.2, 0.2, 0.2, 0.2, 0.2}, 3), speaq::EmptyGroupError);
  CHECK_THROWS_AS(from_proportions({0.5, 0.5}, 3), speaq::EmptyGroupError);
}

TEST_CASE("frequency tables reject degenerate input") {
  CHECK_THROWS_AS(FrequencyTable::from_counts({{0, 0}, {1, 0}}), speaq::ConfigError);
  CHECK_THROWS_AS(FrequencyTable::from_counts({{0, 3}, {0, 2}}), speaq::ConfigError);
  CHECK_THROWS_AS(FrequencyTable::from_counts({{0, -1}}), speaq::ConfigError);
}

TEST_CASE("query counts floor all but the last group") {
  const PredicateGrouping pg({{0}, {1}, {2}}, {0.5, 0.3, 0.2});
  const QueryGrouping qg = group_queries(pg, 10);
  CHECK(qg.counts() == std::vector<int>{5, 3, 2});
}

TEST_CASE("a five-group frequency split yields the expected 300-query partition") {
  // per-group GT totals with N_q = 300
  const double total = 990.0 + 398.0 + 299.0 + 173.0 + 186.0;
  const PredicateGrouping pg({{0}, {1}, {2}, {3}, {4}},
                             {990 / total, 398 / total, 299 / total, 173 / total, 186 / total});
  const QueryGrouping qg = group_queries(pg, 300);
  const std::vector<int> reported{146, 58, 43, 25, 28};
  int sum = 0;
  for (int g = 0; g < 5; ++g) {
    CHECK(std::abs(qg.counts()[g] - reported[g]) <= 1);
    sum += qg.counts()[g];
  }
  CHECK(sum == 300);
}

TEST_CASE("a single group takes every query") {
  const PredicateGrouping pg({{0, 1, 2}}, {1.0});
  CHECK(group_queries(pg, 300).counts() == std::vector<int>{300});
}

TEST_CASE("group lookups") {
  const PredicateGrouping pg({{0}, {1, 2}}, {0.6, 0.4});
  CHECK(pg.group_of(2) == 1);
  CHECK(pg.group_of(0) == 0);
  CHECK_THROWS_AS(pg.group_of(9), speaq::UnknownIdError);

  const QueryGrouping qg({5, 3, 2});
  CHECK(qg.group_of(0) == 0);
  CHECK(qg.group_of(5) == 1);   // ranges [0,5) [5,8) [8,10)
  CHECK(qg.group_of(9) == 2);
  CHECK(qg.range(1) == std::pair<int, int>{5, 8});
  CHECK_THROWS_AS(qg.group_of(10), speaq::UnknownIdError);
  CHECK_THROWS_AS(qg.group_of(-1), speaq::UnknownIdError);
}

TEST_CASE("grouping cost is 0 for matches and null GTs, forbidden otherwise") {
  CHECK(grouping_cost(2, 2) == 0.0);
  CHECK(grouping_cost(std::nullopt, 3) == 0.0);
  CHECK(speaq::is_forbidden(grouping_cost(0, 1)));
}

TEST_CASE("random distributions keep the partition and threshold properties") {
  speaq::Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const int n_pred = rng.uniform_int(6, 40);
    std::vector<std::pair<int, std::int64_t>> counts;
    for (int id = 0; id < n_pred; ++id)
      counts.emplace_back(id, rng.uniform_int(1, 2000));
    const FrequencyTable table = FrequencyTable::from_counts(counts);
    const int n_g = rng.uniform_int(1, 4);

    PredicateGrouping pg = [&]() {
      try {
        return group_predicates(table, n_g);
      } catch (const speaq::EmptyGroupError&) {
        return group_predicates(table, 1);
      }
    }();

    // partition: every id in exactly one group
    std::set<int> seen;
    for (const auto& group : pg.groups())
      for (int id : group) CHECK(seen.insert(id).second);
    CHECK(static_cast<int>(seen.size()) == n_pred);

    // proportions are non-increasing across group boundaries
    const auto proportions = table.proportions();
    for (int g = 0; g + 1 < pg.group_count(); ++g) {
      double lo = 1.0, hi = 0.0;
      for (int id : pg.groups()[g]) lo = std::min(lo, proportions[id].second);
      for (int id : pg.groups()[g + 1]) hi = std::max(hi, proportions[id].second);
      CHECK(lo >= hi - 1e-12);
    }

    // groups closed by overflow exceed their threshold, but only by their
    // last member
    for (int g = 0; g + 1 < pg.group_count(); ++g) {
      const double threshold = std::pow(0.5, g + 1);
      const double mass = pg.group_freq()[g];
      if (mass > threshold) {
        const double last = proportions[pg.groups()[g].back()].second;
        CHECK(mass - last <= threshold + 1e-12);
      }
    }

    // query counts: floors for all but the last group, exact total
    const int n_q = rng.uniform_int(pg.group_count(), 200);
    const QueryGrouping qg = group_queries(pg, n_q);
    int sum = 0;
    for (int g = 0; g < pg.group_count(); ++g) {
      if (g + 1 < pg.group_count())
        CHECK(qg.counts()[g] == static_cast<int>(std::floor(n_q * pg.group_freq()[g])));
      sum += qg.counts()[g];
    }
    CHECK(sum == n_q);

    // determinism
    const PredicateGrouping again = group_predicates(table, pg.group_count());
    CHECK(again.groups() == pg.groups());
  }
}
