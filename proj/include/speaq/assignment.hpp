#pragma once

#include <limits>
#include <vector>

namespace speaq {

/// Marker for entries no assignment may select.
inline constexpr double kForbidden = std::numeric_limits<double>::infinity();

inline bool is_forbidden(double cost) { return cost == kForbidden; }

/// Square cost matrix over GT slots (rows) and predictions (columns).
/// Entries are finite costs or kForbidden.
class CostMatrix {
 public:
  explicit CostMatrix(int n);
  CostMatrix(int n, std::vector<double> entries);  // row-major, n*n entries

  int size() const { return n_; }

  double at(int row, int col) const { return entries_[index(row, col)]; }
  void set(int row, int col, double cost) { entries_[index(row, col)] = cost; }
  bool forbidden(int row, int col) const { return is_forbidden(at(row, col)); }

  /// Largest absolute value over finite entries; 0 when all are forbidden.
  double max_abs_finite() const;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * n_ + col;
  }

  int n_;
  std::vector<double> entries_;
};

/// A bijection row -> column together with its total cost.
struct Assignment {
  std::vector<int> perm;  // perm[row] = column
  double total_cost{0.0};
};

/// Exact minimum-cost assignment (shortest augmenting path, O(n^3)).
/// Deterministic: rows are augmented in ascending index order, so equal-cost
/// optima always resolve the same way. Throws InfeasibleError when every
/// bijection crosses a forbidden entry.
Assignment hungarian(const CostMatrix& costs);

/// Exhaustive oracle over all n! bijections; requires n <= 8.
/// Throws SizeExceededError above the cap and InfeasibleError as above.
Assignment brute_force_assignment(const CostMatrix& costs);

}  // namespace speaq
