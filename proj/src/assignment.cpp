#include "speaq/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "speaq/errors.hpp"

namespace speaq {

CostMatrix::CostMatrix(int n) : n_(n) {
  if (n <= 0) throw ConfigError("CostMatrix: side length must be positive");
  entries_.assign(static_cast<std::size_t>(n) * n, 0.0);
}

CostMatrix::CostMatrix(int n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {
  if (n <= 0) throw ConfigError("CostMatrix: side length must be positive");
  if (entries_.size() != static_cast<std::size_t>(n) * n)
    throw LengthMismatchError("CostMatrix: expected " + std::to_string(n) + "x" +
                              std::to_string(n) + " entries, got " +
                              std::to_string(entries_.size()));
  for (double e : entries_) {
    if (std::isnan(e) || e == -kForbidden)
      throw ConfigError("CostMatrix: entries must be finite or kForbidden");
  }
}

double CostMatrix::max_abs_finite() const {
  double m = 0.0;
  for (double e : entries_) {
    if (!is_forbidden(e)) m = std::max(m, std::abs(e));
  }
  return m;
}

namespace {

// Sum of the original entries along a permutation; throws if it crosses a
// forbidden entry.
double checked_total(const CostMatrix& costs, const std::vector<int>& perm) {
  double total = 0.0;
  for (int row = 0; row < costs.size(); ++row) {
    if (costs.forbidden(row, perm[row]))
      throw InfeasibleError("no assignment avoids the forbidden entries");
    total += costs.at(row, perm[row]);
  }
  return total;
}

}  // namespace

Assignment hungarian(const CostMatrix& costs) {
  const int n = costs.size();

  // Forbidden entries become a finite sentinel larger than any total a
  // feasible assignment can reach, so the reduction arithmetic stays finite.
  // A post-check rejects solutions that still use one.
  const double sentinel = 2.0 * n * std::max(1.0, costs.max_abs_finite()) + 1.0;
  const auto entry = [&](int row, int col) {
    return costs.forbidden(row, col) ? sentinel : costs.at(row, col);
  };

  // Shortest augmenting path with potentials; 1-based helper arrays with
  // column 0 as the virtual root.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);

  for (int row = 1; row <= n; ++row) {
    match[0] = row;
    int j0 = 0;
    std::vector<double> min_reduced(n + 1, std::numeric_limits<double>::infinity());
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      int j1 = 0;
      double delta = std::numeric_limits<double>::infinity();
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double reduced = entry(i0 - 1, j - 1) - u[i0] - v[j];
        if (reduced < min_reduced[j]) {
          min_reduced[j] = reduced;
          way[j] = j0;
        }
        if (min_reduced[j] < delta) {
          delta = min_reduced[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          min_reduced[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  Assignment result;
  result.perm.assign(n, -1);
  for (int j = 1; j <= n; ++j) result.perm[match[j] - 1] = j - 1;
  result.total_cost = checked_total(costs, result.perm);
  return result;
}

Assignment brute_force_assignment(const CostMatrix& costs) {
  const int n = costs.size();
  if (n > 8)
    throw SizeExceededError("brute_force_assignment: n = " + std::to_string(n) +
                            " exceeds the cap of 8");

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);

  bool found = false;
  double best_cost = 0.0;
  std::vector<int> best_perm;
  do {
    double total = 0.0;
    bool feasible = true;
    for (int row = 0; row < n; ++row) {
      const double e = costs.at(row, perm[row]);
      if (is_forbidden(e)) {
        feasible = false;
        break;
      }
      total += e;
    }
    if (feasible && (!found || total < best_cost)) {
      found = true;
      best_cost = total;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (!found) throw InfeasibleError("no assignment avoids the forbidden entries");
  return Assignment{std::move(best_perm), best_cost};
}

}  // namespace speaq
