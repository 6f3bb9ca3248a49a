#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "permdiv/counting.hpp"
#include "permdiv/family.hpp"

namespace permdiv {

// A family of point sets on the [m]^2 grid; members sorted and distinct.
struct PointFamily {
  int n = 0;
  std::vector<PartialPermutation> members;
};

PointFamily to_point_family(const PermFamily& f);

// Reference measure: all permutations of [m] containing `base`. The quotient
// by a compatible fragment is another space of the same kind, so relative
// densities |A(S)|/|A| are pure factorial ratios.
class AmbientSpace {
public:
  explicit AmbientSpace(int m, PartialPermutation base);
  static AmbientSpace full(int m) { return AmbientSpace(m, PartialPermutation(m, {})); }

  int m() const { return m_; }
  const PartialPermutation& base() const { return base_; }

  ExactCount size() const;  // (m - |base|)!
  // Number of ambient members whose point set contains s; 0 when s is
  // incompatible with the base fragment.
  ExactCount members_containing(const PartialPermutation& s) const;
  // Whether p (joined with the base) is a full permutation, i.e. p in A.
  bool has_member(const PartialPermutation& p) const;
  AmbientSpace quotient(const PartialPermutation& s) const;

private:
  int m_;
  PartialPermutation base_;
};

// A family over an abstract ground {0, ..., ground-1}; members sorted.
struct SetFamily {
  int ground = 0;
  std::vector<std::vector<int>> members;
};

SetFamily to_set_family(const PointFamily& f);

struct SpreadCheck {
  bool holds = true;
  // Worst violating set when holds is false (maximal ratio, canonical tie-break).
  std::optional<std::vector<int>> witness_elements;
  std::optional<PartialPermutation> witness_points;  // filled by the point-family overload
};

// r-spread test: |F(X)| / |F| <= r^{-|X|} for every X. Only X contained in
// some member can violate, so those are enumerated exhaustively.
SpreadCheck is_r_spread(const SetFamily& f, const Rational& r);
SpreadCheck is_r_spread(const PointFamily& f, const Rational& r);

struct RqSpreadCheck {
  bool holds = true;
  bool exhaustive = true;  // false when the enumeration budget forced sampling
  std::optional<PartialPermutation> witness_quotient;
  std::optional<PartialPermutation> witness_set;
};

// (r,q)-spread test for an explicit family: every quotient by a realizable set
// of size <= floor(q) must be r-spread.
RqSpreadCheck is_rq_spread(const PointFamily& a, const Rational& r, const Rational& q,
                           std::uint64_t budget = 50'000'000, std::uint64_t seed = 1);

struct HomogeneityCheck {
  bool holds = true;
  std::optional<PartialPermutation> worst;  // worst violating S
};

// (A, tau)-homogeneity: |F(S)| / |F| <= tau^{|S|} |A(S)| / |A| for all S.
// Exact rational comparison; F must be a subfamily of A.
HomogeneityCheck is_homogeneous(const PointFamily& f, const AmbientSpace& a, const Rational& tau);

// Whether s satisfies |F(s)| >= tau^{|s|} (|A(s)|/|A|) |F|.
bool qualifies(const PointFamily& f, const AmbientSpace& a, const Rational& tau, const PartialPermutation& s);

// An inclusion-maximal qualifying set. Grown greedily from the empty set by
// canonically smallest extension; if the greedy set still has a qualifying
// strict superset among realizable sets, jumps to the smallest such superset
// and continues, so the result is genuinely inclusion-maximal.
PartialPermutation find_maximal_qualifying_set(const PointFamily& f, const AmbientSpace& a, const Rational& tau);

struct CoverPart {
  PartialPermutation cover;
  std::vector<PartialPermutation> members;  // the peeled members, still whole
};

struct SpreadDecomposition {
  Rational tau;
  int q = 0;
  std::vector<CoverPart> covers;
  std::vector<PartialPermutation> residual;
  // Set when the procedure stopped because the maximal qualifying set exceeded
  // q; that set is recorded but not peeled.
  std::optional<PartialPermutation> oversized_set;
};

// Iterative peeling: find a maximal qualifying set, stop if it is larger than
// q or the family is exhausted, otherwise split off the members containing it.
SpreadDecomposition spread_approximate(const PointFamily& f, const AmbientSpace& a, const Rational& tau, int q);

struct DecompositionAudit {
  bool partition_exact = false;   // peeled parts + residual == input, disjointly
  bool covers_contained = false;  // every peeled member contains its cover set
  bool homogeneity_ok = false;    // every quotient F_B(B) is (A(B), tau)-homogeneous
  bool residual_bound_ok = false; // |residual| <= tau^{-q-1} |A|
  Rational residual_bound;
};

DecompositionAudit audit_decomposition(const PointFamily& f, const AmbientSpace& a,
                                       const SpreadDecomposition& dec);

// Every member of s1 shares a point with every member of s2; vacuously true
// when either list is empty. Grounds may differ; points compare as raw pairs.
bool cross_intersecting(const std::vector<PartialPermutation>& s1, const std::vector<PartialPermutation>& s2);

struct SpreadTrialResult {
  double empirical = 0;
  double std_error = 0;
  double bound = 0;          // clamped to [0,1]
  bool bound_positive = false;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double inclusion_probability = 0;  // min(m*delta, 1) per-element probability
};

// Monte-Carlo check of the cover probability: W includes each ground element
// independently with probability min(m*delta, 1) (or, with multi_round, W is a
// union of round(m) independent delta-subsets), and a trial succeeds when some
// member is contained in W. Requires the family to be r-spread.
SpreadTrialResult spread_lemma_trial(const SetFamily& f, const Rational& r, double m, double delta,
                                     std::uint64_t trials, std::uint64_t seed, bool multi_round = false);

// Exact cover probability for the all-singletons family on g elements.
double singleton_cover_probability(int g, double inclusion_probability);

SetFamily singletons_family(int g);

}  // namespace permdiv
