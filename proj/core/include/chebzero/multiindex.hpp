#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace chebzero {

/// Exponent vector of a monomial z^k in C^m.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);

  int dimension() const noexcept { return static_cast<int>(entries_.size()); }
  int degree() const noexcept { return degree_; }
  int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& entries() const noexcept { return entries_; }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<int> entries_;
  int degree_ = 0;
};

/// Graded lexicographic enumeration k(1), k(2), ... of N^m truncated at total
/// degree n. Within one degree, earlier coordinates are more significant and
/// larger exponents come first, so for m = 2 the order is
/// (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...
///
/// Positions are 0-based in code; every file dump uses the 1-based j.
class MultiIndexTable {
 public:
  MultiIndexTable(int dimension, int max_degree);

  int dimension() const noexcept { return dimension_; }
  int max_degree() const noexcept { return max_degree_; }
  std::size_t size() const noexcept { return entries_.size(); }

  const MultiIndex& operator[](std::size_t j) const { return entries_[j]; }
  const std::vector<MultiIndex>& entries() const noexcept { return entries_; }

  /// s(j) for the 0-based position j.
  int degree_at(std::size_t j) const { return entries_[j].degree(); }

  /// 0-based position of k, or -1 when k is not in the table.
  long position(const MultiIndex& k) const;

  /// CSV with columns j,k_1..k_m,s (1-based j).
  void write_csv(std::ostream& out) const;

 private:
  int dimension_;
  int max_degree_;
  std::vector<MultiIndex> entries_;
};

/// theta = k / |k| in the standard simplex.
struct SimplexDirection {
  std::vector<double> theta;

  /// Component-wise maximum distance.
  double distance(const SimplexDirection& other) const;
};

MultiIndexTable enumerate(int m, int n);

/// d_n = C(m+n, n). Throws ErrorKind::kOverflow if it does not fit in int64.
std::int64_t dimension(int m, int n);

/// Throws ErrorKind::kDegenerateInput for the zero multi-index.
SimplexDirection direction(const MultiIndex& k);

}  // namespace chebzero
