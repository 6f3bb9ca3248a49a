#include <random>

#include "doctest.h"
#include "permdiv/counting.hpp"
#include "permdiv/permutation.hpp"

using namespace permdiv;

namespace {

// Independent derangement oracle: filter all n! permutations.
std::uint64_t derangements_by_filter(int n) {
  std::uint64_t count = 0;
  for (std::uint64_t r = 0; r < factorial_u64(n); ++r) {
    if (Permutation::unrank(n, r).support().size() == static_cast<size_t>(n)) ++count;
  }
  return count;
}

// Independent N(H_k) oracle: permutations fixing (1,1) with a fixed point in [k+1,n].
std::uint64_t n_h_by_filter(int n, int k) {
  std::uint64_t count = 0;
  for (std::uint64_t r = 0; r < factorial_u64(n); ++r) {
    Permutation s = Permutation::unrank(n, r);
    if (s(1) != 1) continue;
    bool meets_tail = false;
    for (int i = k + 1; i <= n; ++i)
      if (s(i) == i) meets_tail = true;
    if (meets_tail) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("derangement numbers") {
  CHECK(derangement_number(0) == 1);
  CHECK(derangement_number(1) == 0);
  CHECK(derangement_number(2) == 1);
  CHECK(derangement_number(4) == 9);
  CHECK(derangement_number(4) == ExactCount(derangements_by_filter(4)));
  CHECK(derangement_number(6) == ExactCount(derangements_by_filter(6)));
  CHECK(derangement_number(10) == 1334961);
  for (int n = 0; n <= 30; ++n) CHECK(derangement_number(n) == derangement_number_alternating(n));
  for (int n = 1; n <= 30; ++n) CHECK(is_nearest_integer_to_factorial_over_e(n, derangement_number(n)));
  CHECK(!is_nearest_integer_to_factorial_over_e(4, ExactCount(10)));
}

TEST_CASE("e bounds are directed") {
  CHECK(e_lower() < e_upper());
  // 2.718281828 < e < 2.718281829
  CHECK(e_lower() > Rational(2718281828, 1000000000));
  CHECK(e_upper() < Rational(2718281829, 1000000000));
  CHECK(e_squared_lower() < e_squared_upper());
}

TEST_CASE("neighborhood size formulas") {
  CHECK(size_N_H(4, 2) == 3);
  CHECK(size_N_H(5, 2) == 13);
  CHECK(size_N_H(6, 3) == 56);
  for (int n = 4; n <= 7; ++n)
    for (int k = 2; k <= n - 2; ++k) {
      CHECK(size_N_H_via_degree_sum(n, k) == size_N_H_via_inclusion_exclusion(n, k));
      CHECK(size_N_H(n, k) == ExactCount(n_h_by_filter(n, k)));
    }
  CHECK_THROWS_AS(size_N_H(5, 9), error);
  CHECK_THROWS_AS(size_N_H(5, 1), error);
}

TEST_CASE("extremal family sizes") {
  CHECK(size_E(4, 2) == 4);
  CHECK(size_E(5, 2) == 14);
  CHECK(size_E(6, 3) == 60);
  for (int n = 5; n <= 30; ++n) {
    ExactCount endpoint = 3 * factorial(n - 2) - 2 * factorial(n - 3);
    CHECK(size_E(n, n - 3) == endpoint);
    CHECK(size_E(n, n - 2) == endpoint);
  }
}

TEST_CASE("permanent of 0-1 matrices") {
  std::vector<std::uint8_t> ones(16, 1);
  CHECK(permanent01(ones, 4) == 24);
  CHECK(permanent01({}, 0) == 1);
  CHECK(permanent01({0}, 1) == 0);

  for (int m = 1; m <= 10; ++m) {
    std::vector<std::uint8_t> mat(static_cast<size_t>(m) * static_cast<size_t>(m), 1);
    for (int i = 0; i < m; ++i) mat[static_cast<size_t>(i) * m + static_cast<size_t>(i)] = 0;
    CHECK(permanent01(mat, m) == derangement_number(m));
  }

  std::vector<std::uint8_t> too_big(25u * 25u, 1);
  CHECK_THROWS_AS(permanent01(too_big, 25), error);
}

TEST_CASE("menage numbers") {
  CHECK(menage_number(3) == 1);
  CHECK(menage_number(5) == 13);
  CHECK_THROWS_AS(menage_number(2), error);

  // Touchard sum against the doubly-punctured permanent.
  for (int m = 3; m <= 12; ++m) {
    std::vector<std::uint8_t> mat(static_cast<size_t>(m) * static_cast<size_t>(m), 1);
    for (int i = 0; i < m; ++i) {
      mat[static_cast<size_t>(i) * m + static_cast<size_t>(i)] = 0;
      mat[static_cast<size_t>(i) * m + static_cast<size_t>((i + 1) % m)] = 0;
    }
    CHECK(menage_number(m) == permanent01(mat, m));
  }

  // Lower envelope, certified with e^2 from below.
  for (int n = 10; n <= 20; ++n) {
    Rational lhs = Rational(menage_number(n) * (n - 1)) * e_squared_lower();
    CHECK(lhs >= Rational(factorial(n) * (n - 2)));
  }
}

TEST_CASE("double avoid counts") {
  PartialPermutation id6 = Permutation::identity(6).as_points();
  CHECK_THROWS_AS(double_avoid_count(6, id6, id6, Point{1, 1}, Point{2, 3}), error);
  CHECK_THROWS_AS(
      double_avoid_count(6, PartialPermutation(6, {}), PartialPermutation(6, {}), Point{1, 2}, Point{1, 3}),
      error);

  // Identity vs the full cycle; required points clear of both.
  Permutation shift({2, 3, 4, 5, 6, 1});
  ExactCount fast = double_avoid_count(6, id6, shift.as_points(), Point{1, 3}, Point{2, 1});
  std::uint64_t brute = 0;
  for_each_extension(PartialPermutation(6, {Point{1, 3}, Point{2, 1}}), [&](const Permutation& s) {
    if (!s.intersects(id6) && !s.intersects(shift.as_points())) ++brute;
    return true;
  });
  CHECK(fast == ExactCount(brute));
  CHECK(fast > 0);
  // A required point inside one of the avoided sets is a conflict.
  CHECK_THROWS_AS(double_avoid_count(6, id6, shift.as_points(), Point{1, 2}, Point{2, 1}), error);

  // Partial constraints, random instances, against the brute filter.
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 6 + static_cast<int>(rng() % 2);
    auto random_partial = [&](int target) {
      PartialPermutation p(n, {});
      for (int attempt = 0; attempt < 30 && p.size() < target; ++attempt) {
        Point cand{1 + static_cast<int>(rng() % n), 1 + static_cast<int>(rng() % n)};
        if (p.compatible(cand)) p = p.united(cand);
      }
      return p;
    };
    PartialPermutation sigma = random_partial(static_cast<int>(rng() % (n + 1)));
    PartialPermutation pi = random_partial(static_cast<int>(rng() % (n + 1)));
    Point p1{0, 0}, p2{0, 0};
    for (;;) {
      p1 = Point{1 + static_cast<int>(rng() % n), 1 + static_cast<int>(rng() % n)};
      p2 = Point{1 + static_cast<int>(rng() % n), 1 + static_cast<int>(rng() % n)};
      if (p1.row == p2.row || p1.col == p2.col) continue;
      if (sigma.contains(p1) || sigma.contains(p2) || pi.contains(p1) || pi.contains(p2)) continue;
      break;
    }
    ExactCount got = double_avoid_count(n, sigma, pi, p1, p2);
    std::uint64_t want = 0;
    for_each_extension(PartialPermutation(n, {p1, p2}), [&](const Permutation& s) {
      if (!s.intersects(sigma) && !s.intersects(pi)) ++want;
      return true;
    });
    CHECK(got == ExactCount(want));
  }
}

TEST_CASE("weighted hitting count evaluates the sum literally") {
  // Inverted range: empty sum.
  CHECK(hitting_weighted_count(8, 5, 4) == 0);
  CHECK(hitting_weighted_count(8, 5, 3) == 0);
  // Single-term range j in [2,2]: C(2,0) d_5.
  CHECK(hitting_weighted_count(8, 5, 2) == 44);
  // Wider range, cross-evaluated by a direct loop.
  {
    int n = 12, t = 9, i = 2;
    ExactCount direct = 0;
    for (int j = i; j <= t - i - 1; ++j) direct += binomial(t - i - 1, j - i) * derangement_number(n - j - 1);
    CHECK(hitting_weighted_count(n, t, i) == direct);
  }
  CHECK_THROWS_AS(hitting_weighted_count(8, 9, 2), error);
  CHECK_THROWS_AS(hitting_weighted_count(8, 5, 1), error);
}

TEST_CASE("asymptotic estimates") {
  EstimateReport eq4 = asymptotic_estimate(50, 48, 1);
  CHECK(eq4.exact == size_N_H(50, 48));
  CHECK(eq4.estimate == Real(factorial(48) * 2));
  CHECK(eq4.relative_error > 0);
  CHECK(eq4.relative_error < Real(1) / 10);

  EstimateReport eq5 = asymptotic_estimate(100, 10, 2);
  CHECK(eq5.relative_error < Real(1) / 1000);

  // k = n/2 ladder: estimate/(n-1)! approaches 1 - e^{-1/2} monotonically.
  Real target = 1 - 1 / sqrt(exp(Real(1)));
  Real prev_gap = 1;
  for (int n : {40, 80, 160}) {
    EstimateReport rep = asymptotic_estimate(n, n / 2, 2);
    Real ratio = rep.estimate / Real(factorial(n - 1));
    Real gap = abs(ratio - target);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }

  CHECK_THROWS_AS(asymptotic_estimate(10, 4, 3), error);
}
