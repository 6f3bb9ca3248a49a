#include <cmath>

#include "doctest.h"
#include "permdiv/spread.hpp"

using namespace permdiv;

TEST_CASE("ambient space sizes") {
  AmbientSpace sigma5 = AmbientSpace::full(5);
  CHECK(sigma5.size() == 120);
  CHECK(sigma5.members_containing(PartialPermutation(5, {})) == 120);
  CHECK(sigma5.members_containing(PartialPermutation(5, {Point{1, 1}})) == 24);
  CHECK(sigma5.members_containing(PartialPermutation(5, {Point{1, 1}, Point{2, 3}})) == 6);

  AmbientSpace star(5, PartialPermutation(5, {Point{1, 1}}));
  CHECK(star.size() == 24);
  CHECK(star.members_containing(PartialPermutation(5, {Point{1, 2}})) == 0);  // collides with the base
  CHECK(star.members_containing(PartialPermutation(5, {Point{1, 1}, Point{2, 2}})) == 6);
  CHECK(star.has_member(Permutation::identity(5).as_points()));
  CHECK(!star.has_member(Permutation({2, 1, 3, 4, 5}).as_points()));
}

TEST_CASE("r-spread checks") {
  CHECK(is_r_spread(to_point_family(PermFamily::full(4)), Rational(1)).holds);

  // Sigma_8 is 2-spread: (8-s)! 2^s <= 8! for every s (size determines the ratio).
  for (int s = 0; s <= 8; ++s) {
    ExactCount lhs = factorial(8 - s);
    for (int i = 0; i < s; ++i) lhs *= 2;
    CHECK(lhs <= factorial(8));
  }
  CHECK(is_r_spread(to_point_family(PermFamily::full(5)), Rational(5, 4)).holds);

  SpreadCheck star = is_r_spread(to_point_family(star_family(4, 1, 1)), Rational(2));
  CHECK(!star.holds);
  REQUIRE(star.witness_points.has_value());
  // {(1,1)} already violates (ratio 1 > 1/2); the maximal violation is a
  // whole member, and the canonical tie-break lands on the identity.
  CHECK(*star.witness_points == Permutation::identity(4).as_points());

  // A single permutation is not r-spread for any r > 1.
  PointFamily single;
  single.n = 4;
  single.members = {Permutation::identity(4).as_points()};
  CHECK(!is_r_spread(single, Rational(3, 2)).holds);
  CHECK(is_r_spread(single, Rational(1)).holds);

  CHECK_THROWS_AS(is_r_spread(PointFamily{4, {}}, Rational(2)), error);
}

TEST_CASE("(r,q)-spread checks") {
  for (int m = 4; m <= 6; ++m) {
    RqSpreadCheck check = is_rq_spread(to_point_family(PermFamily::full(m)), Rational(m, 4), Rational(m, 4));
    CHECK(check.holds);
    CHECK(check.exhaustive);
  }
  // Sigma_4 is not 4-spread: at |X| = 2 the ratio 2/24 exceeds 1/16.
  RqSpreadCheck fail = is_rq_spread(to_point_family(PermFamily::full(4)), Rational(4), Rational(1));
  CHECK(!fail.holds);
}

TEST_CASE("homogeneity checks") {
  AmbientSpace sigma4 = AmbientSpace::full(4);
  PointFamily whole = to_point_family(PermFamily::full(4));
  CHECK(is_homogeneous(whole, sigma4, Rational(1)).holds);
  CHECK(is_homogeneous(whole, sigma4, Rational(3, 2)).holds);

  PointFamily star = to_point_family(star_family(4, 1, 1));
  HomogeneityCheck bad = is_homogeneous(star, sigma4, Rational(2));
  CHECK(!bad.holds);
  REQUIRE(bad.worst.has_value());
  CHECK(*bad.worst == PartialPermutation(4, {Point{1, 1}}));
  CHECK(is_homogeneous(star, sigma4, Rational(4)).holds);

  // Not a subfamily: members outside the restricted ambient space.
  AmbientSpace corner(4, PartialPermutation(4, {Point{1, 1}}));
  CHECK_THROWS_AS(is_homogeneous(whole, corner, Rational(2)), error);
}

TEST_CASE("maximal qualifying sets") {
  AmbientSpace sigma5 = AmbientSpace::full(5);

  // The full space: only the empty set qualifies for tau > 1.
  CHECK(find_maximal_qualifying_set(to_point_family(PermFamily::full(5)), sigma5, Rational(3, 2)).empty());

  // The corner star with tau = 2: the qualifying chain stops at size 2.
  PartialPermutation grown =
      find_maximal_qualifying_set(to_point_family(star_family(5, 1, 1)), sigma5, Rational(2));
  CHECK(grown == PartialPermutation(5, {Point{1, 1}, Point{2, 2}}));

  // A single permutation with small tau: the whole point set qualifies.
  PointFamily single;
  single.n = 4;
  single.members = {Permutation::identity(4).as_points()};
  CHECK(find_maximal_qualifying_set(single, AmbientSpace::full(4), Rational(3, 2)) ==
        Permutation::identity(4).as_points());

  // Every returned set is inclusion-maximal: no realizable qualifying strict
  // superset exists.
  PointFamily e52 = to_point_family(build_E(5, 2));
  PartialPermutation s = find_maximal_qualifying_set(e52, sigma5, Rational(3, 2));
  CHECK(qualifies(e52, sigma5, Rational(3, 2), s));
  for (const auto& member : e52.members) {
    if (!s.is_subset_of(member)) continue;
    for (const Point& p : member.minus(s).points()) {
      CHECK(!qualifies(e52, sigma5, Rational(3, 2), s.united(p)));
    }
  }
}

TEST_CASE("spread decomposition") {
  AmbientSpace sigma5 = AmbientSpace::full(5);

  // tau barely above 1: the empty set is maximal, one cover takes everything.
  PointFamily whole = to_point_family(PermFamily::full(5));
  SpreadDecomposition trivial = spread_approximate(whole, sigma5, Rational(101, 100), 3);
  REQUIRE(trivial.covers.size() == 1);
  CHECK(trivial.covers[0].cover.empty());
  CHECK(trivial.covers[0].members.size() == 120);
  CHECK(trivial.residual.empty());

  PointFamily e52 = to_point_family(build_E(5, 2));
  SpreadDecomposition dec = spread_approximate(e52, sigma5, Rational(3, 2), 3);
  DecompositionAudit audit = audit_decomposition(e52, sigma5, dec);
  CHECK(audit.partition_exact);
  CHECK(audit.covers_contained);
  CHECK(audit.homogeneity_ok);
  CHECK(audit.residual_bound_ok);

  // Oversized stop: tiny q forces the first maximal set beyond the cap.
  PointFamily single;
  single.n = 4;
  single.members = {Permutation::identity(4).as_points()};
  SpreadDecomposition stopped = spread_approximate(single, AmbientSpace::full(4), Rational(3, 2), 1);
  CHECK(stopped.covers.empty());
  CHECK(stopped.residual.size() == 1);
  REQUIRE(stopped.oversized_set.has_value());
  CHECK(stopped.oversized_set->size() > 1);

  CHECK_THROWS_AS(spread_approximate(PointFamily{5, {}}, sigma5, Rational(3, 2), 3), error);
  CHECK_THROWS_AS(spread_approximate(e52, sigma5, Rational(1), 3), error);
}

TEST_CASE("cross intersection") {
  CHECK(cross_intersecting({}, {PartialPermutation(4, {Point{1, 1}})}));
  CHECK(cross_intersecting({PartialPermutation(4, {})}, {}));
  CHECK(!cross_intersecting({PartialPermutation(4, {})}, {PartialPermutation(4, {Point{1, 1}})}));
  PartialPermutation seg = identity_segment(2, 4, 4);
  CHECK(cross_intersecting({seg}, {seg}));
  CHECK(!cross_intersecting({PartialPermutation(4, {Point{1, 2}})}, {PartialPermutation(4, {Point{2, 1}})}));
}

TEST_CASE("monte-carlo cover trials") {
  SetFamily singles = singletons_family(16);
  SpreadTrialResult trial = spread_lemma_trial(singles, Rational(16), 4, 1.0 / 16, 20000, 42);
  double exact = singleton_cover_probability(16, trial.inclusion_probability);
  CHECK(std::abs(trial.empirical - exact) <= 3.5 * std::max(trial.std_error, 1e-4));

  // Determinism: identical seeds give identical counts.
  SpreadTrialResult again = spread_lemma_trial(singles, Rational(16), 4, 1.0 / 16, 20000, 42);
  CHECK(trial.empirical == again.empirical);
  SpreadTrialResult other = spread_lemma_trial(singles, Rational(16), 4, 1.0 / 16, 20000, 43);
  CHECK(trial.empirical != other.empirical);  // astronomically unlikely to tie

  // r*delta <= 2 makes the theorem bound vacuous; the trial reports the clamp.
  SpreadTrialResult vacuous = spread_lemma_trial(singles, Rational(16), 4, 1.0 / 64, 1000, 7);
  CHECK(!vacuous.bound_positive);
  CHECK(vacuous.bound == 0);

  // Positive bound: empirical stays above it.
  SpreadTrialResult strong = spread_lemma_trial(singletons_family(64), Rational(64), 4, 1.0 / 8, 5000, 9);
  CHECK(strong.bound_positive);
  CHECK(strong.empirical >= strong.bound - 3 * std::max(strong.std_error, 1e-4));

  // The multi-round variant is a different but valid sampler.
  SpreadTrialResult multi = spread_lemma_trial(singles, Rational(16), 4, 1.0 / 16, 5000, 11, true);
  CHECK(multi.empirical > 0.5);

  // Not spread: a family with a universal element fails the precondition.
  SetFamily dense;
  dense.ground = 8;
  dense.members = {{0, 1}, {0, 2}, {0, 3}};
  CHECK_THROWS_AS(spread_lemma_trial(dense, Rational(2), 2, 0.25, 100, 1), error);
}
