#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "permdiv/points.hpp"

namespace permdiv {

struct HittingSetReport {
  // Inclusion-minimal hitting sets grouped by size; each set is a sorted point
  // vector, and no listed set contains another.
  std::map<int, std::vector<std::vector<Point>>> by_size;
  // Branching-tree node counts per depth (number of candidate partial sets).
  std::map<int, std::uint64_t> nodes_by_depth;
  // Set when some member is empty; nothing can hit it.
  bool unhittable = false;
};

// Enumerates the inclusion-minimal hitting sets of `family` of size at most
// max_size. The search branches only over the elements of the first member not
// yet hit, so the candidate count at depth i is bounded by the largest member
// size to the i-th power; minimality and duplicates are filtered afterwards.
// Throws empty_input on an empty family list.
HittingSetReport minimal_hitting_sets(const std::vector<PartialPermutation>& family, int max_size);

struct HittingBoundReport {
  bool bound_holds = true;                       // count(i) <= (t-2)^i for i in [2, t-1]
  bool common_point_free = true;                 // intersection of the family is empty
  std::map<int, std::uint64_t> counts;           // minimal hitting sets per size
  std::map<int, std::uint64_t> bounds;           // (t-2)^i
  HittingSetReport sets;
};

// Checks the per-size bound for a family of partial permutations inside
// [2,t]^2. Members larger than t-2 violate the hard precondition; a nonempty
// common intersection is reported, not thrown.
HittingBoundReport hitting_bound_check(const std::vector<PartialPermutation>& family, int t);

// Brute-force oracle: scans every subset of the points of [2,t]^2 (grid cells
// with both coordinates in [2,t]) and keeps the minimal transversals. Only
// sensible for t <= 5.
std::map<int, std::vector<std::vector<Point>>> minimal_hitting_sets_by_scan(
    const std::vector<PartialPermutation>& family, int t, int max_size);

}  // namespace permdiv
