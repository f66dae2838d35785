#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "speaq/assignment.hpp"
#include "speaq/rng.hpp"

namespace speaq::verify {

/// Pluggable solver so tests can exercise the harness against a corrupted
/// implementation. Defaults to hungarian.
using Solver = std::function<Assignment(const CostMatrix&)>;

struct SuiteResult {
  std::string name;
  int trials{0};
  int failures{0};
  std::string first_failure;

  bool passed() const { return failures == 0 && trials > 0; }
};

/// Random grid-valued matrix (entries are multiples of 1/8, so cost sums
/// compare exactly). May contain forbidden entries and all-zero rows.
CostMatrix random_grid_matrix(Rng& rng, int n, bool with_forbidden);

/// Solver vs brute-force enumeration on random matrices with n in
/// [1, max_n]; both sides must agree on the total cost or both must report
/// infeasibility.
SuiteResult oracle_equivalence(int trials, int max_n, std::uint64_t seed,
                               const Solver& solver = {});

/// Randomized speaq_assign runs over generated scenes with n_g in [1, 6];
/// every returned pair must satisfy the group constraint.
SuiteResult group_constraint(int trials, std::uint64_t seed);

}  // namespace speaq::verify
