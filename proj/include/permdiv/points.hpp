#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "permdiv/error.hpp"

namespace permdiv {

// A cell (row, col) of the n-by-n grid, meaning "the permutation maps row to col".
// Rows and columns are 1-based.
struct Point {
  int row = 0;
  int col = 0;

  auto operator<=>(const Point&) const = default;
};

std::ostream& operator<<(std::ostream& os, const Point& p);

// A set of grid points with pairwise distinct rows and pairwise distinct columns,
// i.e. a fragment of a permutation matrix. Stored row-sorted; immutable after
// construction. The empty set is a valid partial permutation.
class PartialPermutation {
public:
  PartialPermutation() = default;

  // Validates bounds and row/col distinctness; canonicalizes to row-sorted order.
  PartialPermutation(int n, std::vector<Point> points);

  int n() const { return n_; }
  int size() const { return static_cast<int>(points_.size()); }
  bool empty() const { return points_.empty(); }
  const std::vector<Point>& points() const { return points_; }

  bool contains(Point p) const;
  // Column mapped by `row`, or 0 if the row is free.
  int col_of(int row) const;

  bool operator==(const PartialPermutation&) const = default;
  // Lexicographic on (size, point list); used for canonical tie-breaking.
  std::strong_ordering operator<=>(const PartialPermutation& other) const;

  // Set operations. Throws mismatched_ground on different n.
  bool intersects(const PartialPermutation& other) const;
  bool is_subset_of(const PartialPermutation& other) const;
  // Union; throws row/col_collision if the result is not a partial permutation.
  PartialPermutation united(const PartialPermutation& other) const;
  PartialPermutation united(Point p) const;
  PartialPermutation minus(const PartialPermutation& other) const;

  // Whether adding p keeps rows and columns distinct.
  bool compatible(Point p) const;

  // Text form "r->c,r->c" in row order; empty set renders as "".
  std::string to_string() const;
  static PartialPermutation parse(int n, const std::string& text);

private:
  int n_ = 0;
  std::vector<Point> points_;
};

// The identity fragment {(i,i), (i+1,i+1), ..., (j,j)}. Requires 1 <= i <= j <= n.
PartialPermutation identity_segment(int i, int j, int n);

}  // namespace permdiv
