#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "permdiv/family.hpp"

namespace permdiv {

// Vertices are Lehmer ranks; edge iff the two permutations share a point.
class IntersectionGraph {
public:
  explicit IntersectionGraph(int n);  // n <= 6

  int n() const { return n_; }
  std::uint32_t vertex_count() const { return vertex_count_; }
  bool adjacent(std::uint32_t a, std::uint32_t b) const {
    return (rows_[a][b / 64] >> (b % 64)) & 1;
  }
  std::uint32_t degree(std::uint32_t v) const;

private:
  int n_;
  std::uint32_t vertex_count_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

struct SearchOutcome {
  std::uint64_t best_size = 0;
  std::vector<std::uint32_t> witness;  // member ranks, ascending
  bool exact = true;                   // false when the node budget ran out
  std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultSearchBudget = 40'000'000;

// Exact maximum size of an intersecting family with diversity >= min_diversity,
// by branch-and-bound clique search with greedy-coloring bounds. Diversity can
// only grow when members are added, so it prunes via the optimistic bound
// |C| + |P| - max point degree of C and is checked exactly at leaves.
// n <= 5; a run that exhausts `budget` returns its best find flagged inexact.
SearchOutcome max_intersecting(int n, std::uint64_t min_diversity, std::uint64_t budget = kDefaultSearchBudget);

// All maximum witnesses at the given diversity threshold, by exhaustive subset
// scan; n = 4 only (C(24, size) stays small).
std::vector<std::vector<std::uint32_t>> all_maximum_witnesses(int n, std::uint64_t min_diversity,
                                                              std::uint64_t max_size);

struct FrontierEntry {
  std::uint64_t gamma0 = 0;
  std::uint64_t max_size = 0;
  bool exact = true;
  std::vector<std::uint32_t> witness_ranks;
  std::optional<int> isomorphic_to_E_k;
};

struct ExtremalReport {
  int n = 0;
  std::vector<FrontierEntry> entries;
  std::uint64_t ekr_max = 0;  // value at gamma0 = 0
};

// Frontier over gamma0 = 0, 1, ... until no family qualifies. Each witness is
// tested for isomorphism against the E families of matching size.
ExtremalReport frontier(int n, std::uint64_t budget = kDefaultSearchBudget);

PermFamily family_from_ranks_list(int n, const std::vector<std::uint32_t>& ranks);

}  // namespace permdiv
