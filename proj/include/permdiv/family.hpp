#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permdiv/permutation.hpp"

namespace permdiv {

// Families are bitsets over Lehmer ranks; n is capped so the bitset stays
// within a few hundred kilobytes.
inline constexpr int kMaxFamilyN = 10;

// An immutable set of permutations over a fixed ground size, indexed by rank.
class PermFamily {
public:
  explicit PermFamily(int n);  // empty family

  static PermFamily full(int n);  // all n! permutations

  int n() const { return n_; }
  std::uint64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  std::uint64_t universe() const { return universe_; }

  bool contains(std::uint64_t rank) const;
  bool contains(const Permutation& s) const { return contains(s.rank()); }

  // Visits member ranks in increasing order; visitor returns false to stop.
  void for_each_rank(const std::function<bool(std::uint64_t)>& visit) const;
  std::vector<Permutation> members() const;

  PermFamily united(const PermFamily& other) const;
  PermFamily intersected(const PermFamily& other) const;
  PermFamily minus(const PermFamily& other) const;
  PermFamily complement() const;
  // Members containing every point of x.
  PermFamily restricted_to_containing(const PartialPermutation& x) const;
  // Members with the points of x removed (the quotient family F(x)).
  std::vector<PartialPermutation> quotient(const PartialPermutation& x) const;

  PermFamily with_rank(std::uint64_t rank, bool value) const;

  bool operator==(const PermFamily& other) const = default;

  // Construction helper used by the filter and builders.
  class Builder {
  public:
    explicit Builder(int n);
    void insert(std::uint64_t rank);
    void merge(const Builder& other);  // bitwise OR
    PermFamily finish() &&;

  private:
    friend class PermFamily;
    int n_;
    std::uint64_t universe_;
    std::vector<std::uint64_t> bits_;
  };

private:
  PermFamily(int n, std::vector<std::uint64_t> bits);
  void recount();

  int n_ = 0;
  std::uint64_t universe_ = 1;
  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Declarative membership predicate over all permutations of [n]:
//   contains      — every listed point must be present
//   avoid_points  — none of these points may be present
//   intersect_each— at least one shared point with every listed set
//   avoid_each    — no shared point with any listed set
struct FilterSpec {
  int n = 0;
  PartialPermutation contains;
  std::vector<PartialPermutation> avoid_points;
  std::vector<PartialPermutation> intersect_each;
  std::vector<PartialPermutation> avoid_each;
};

// Builds the family of permutations satisfying `spec`. Infeasible constraints
// yield an empty family. `threads` > 1 splits the rank space; the result is
// bit-identical to the sequential run.
PermFamily sigma_filter(const FilterSpec& spec, int threads = 1);

// All permutations containing the point (row, col).
PermFamily star_family(int n, int row, int col);

// Permutations fixing k+1..n pointwise with sigma(1) != 1. Size k! - (k-1)!.
// Requires 2 <= k <= n-2.
PermFamily build_H(int n, int k);

// Permutations fixing (1,1) that intersect every member of g. g must be
// nonempty. threads > 1 splits the star across workers; bit-identical result.
PermFamily neighborhood(const PermFamily& g, int threads = 1);

// build_H(n,k) together with its neighborhood; disjoint union.
PermFamily build_E(int n, int k);

struct FamilyStats {
  std::uint64_t size = 0;
  std::uint64_t max_degree = 0;
  Point max_degree_point;  // canonically smallest among ties
  std::uint64_t diversity = 0;
  PartialPermutation common_intersection;
  // Set only for the empty family, whose common intersection is the whole
  // grid and not representable as a partial permutation.
  bool common_intersection_is_full_ground = false;
};

FamilyStats stats(const PermFamily& f);

// True iff all pairs of members share a point; empty and singleton families count.
bool is_intersecting(const PermFamily& f);

// Grows f to an inclusion-maximal intersecting family inside `pool` by a
// single ascending-rank greedy pass (once a candidate is rejected, the family
// only grows, so it stays rejected). f must be nonempty and intersecting.
// Default pool is all of Sigma_n.
PermFamily maximal_closure(const PermFamily& f, const std::optional<PermFamily>& pool = std::nullopt);

// Searches for pi, rho with g = { pi o s o rho : s in f } (equivalently a row
// and a column relabeling carrying f onto g). Returns (pi, rho) or nothing.
std::optional<std::pair<Permutation, Permutation>> are_isomorphic(const PermFamily& f, const PermFamily& g);

// Applies the relabeling memberwise: { pi o s o rho : s in f }.
PermFamily relabel(const PermFamily& f, const Permutation& pi, const Permutation& rho);

// Text serialization: "n=<n> size=<s>" header, then one permutation per line.
std::string family_to_text(const PermFamily& f);
PermFamily family_from_text(const std::string& text);

// Compact binary serialization: u64 n, u64 count, then little-endian u64 ranks.
std::vector<std::uint8_t> family_to_ranks(const PermFamily& f);
PermFamily family_from_ranks(const std::vector<std::uint8_t>& bytes);

void family_save(const PermFamily& f, const std::string& path, bool binary);
PermFamily family_load(const std::string& path);

}  // namespace permdiv
