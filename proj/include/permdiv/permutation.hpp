#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "permdiv/points.hpp"

namespace permdiv {

// Largest n with n! representable in uint64_t.
inline constexpr int kMaxRankableN = 20;

// n! as uint64_t; requires 0 <= n <= 20.
std::uint64_t factorial_u64(int n);

// A bijection of [1,n], stored both as its one-line image array and as its
// lexicographic (Lehmer) rank in [0, n!-1]. Immutable after construction.
class Permutation {
public:
  // Validates that `image` is a bijection of [1, image.size()].
  explicit Permutation(std::vector<int> image);

  static Permutation identity(int n);
  // Lexicographic unrank; requires 0 <= r < n!.
  static Permutation unrank(int n, std::uint64_t r);

  int n() const { return static_cast<int>(image_.size()); }
  // sigma(i); 1-based.
  int operator()(int i) const { return image_[static_cast<size_t>(i) - 1]; }
  const std::vector<int>& image() const { return image_; }
  std::uint64_t rank() const { return rank_; }

  bool operator==(const Permutation& other) const { return image_ == other.image_; }

  Permutation inverse() const;
  // Group law (a.compose(b))(i) = a(b(i)).
  Permutation compose(const Permutation& other) const;

  // Rows i with sigma(i) != i.
  std::set<int> support() const;

  bool intersects(const Permutation& other) const;
  bool intersects(const PartialPermutation& other) const;
  bool contains(Point p) const { return p.row >= 1 && p.row <= n() && (*this)(p.row) == p.col; }
  bool contains(const PartialPermutation& p) const;
  bool avoids(const PartialPermutation& p) const { return !intersects(p); }

  PartialPermutation as_points() const;

  // One-line notation "2 1 3 4".
  std::string to_string() const;
  static Permutation parse(const std::string& text);

private:
  std::vector<int> image_;
  std::uint64_t rank_ = 0;
};

// Visits every permutation of [1,n] that contains `p`, in rank order.
// The visitor returns false to stop early. There are exactly (n-|p|)! of them.
void for_each_extension(const PartialPermutation& p, const std::function<bool(const Permutation&)>& visit);

// Materialized extension list, in rank order.
std::vector<Permutation> extensions(const PartialPermutation& p);

}  // namespace permdiv
