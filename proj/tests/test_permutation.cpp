#include <algorithm>
#include <random>

#include "doctest.h"
#include "permdiv/permutation.hpp"

using namespace permdiv;

TEST_CASE("permutation construction and validation") {
  Permutation s({2, 1, 3, 4});
  CHECK(s(1) == 2);
  CHECK(s(3) == 3);
  CHECK_THROWS_AS(Permutation({1, 1, 3}), error);
  CHECK_THROWS_AS(Permutation({0, 1, 2}), error);
  CHECK(Permutation::identity(4).rank() == 0);
}

TEST_CASE("intersection of permutations") {
  Permutation id = Permutation::identity(3);
  Permutation cycle({2, 3, 1});
  CHECK(!id.intersects(cycle));
  CHECK(id.intersects(id));
  // sigma = (1 2): meeting a star member that fixes 1 needs a fixed point in {3,4}
  Permutation sigma({2, 1, 3, 4});
  Permutation pi({1, 3, 4, 2});
  CHECK(!sigma.intersects(pi));
  CHECK(sigma.intersects(Permutation({1, 2, 4, 3})) == false);
  CHECK(sigma.intersects(Permutation({1, 2, 3, 4})));
}

TEST_CASE("support") {
  CHECK(Permutation::identity(4).support().empty());
  CHECK(Permutation({2, 1, 3, 4}).support() == std::set<int>{1, 2});
  CHECK(Permutation({2, 3, 4, 1}).support() == std::set<int>{1, 2, 3, 4});
}

TEST_CASE("group laws") {
  Permutation id = Permutation::identity(3);
  Permutation s({2, 3, 1});
  CHECK(id.compose(s) == s);
  CHECK(s.inverse() == Permutation({3, 1, 2}));
  CHECK(Permutation({2, 1}).compose(Permutation({2, 1})) == Permutation::identity(2));
  CHECK(s.compose(s.inverse()) == id);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + static_cast<int>(rng() % 7);
    Permutation a = Permutation::unrank(n, rng() % factorial_u64(n));
    Permutation b = Permutation::unrank(n, rng() % factorial_u64(n));
    CHECK(a.compose(b).inverse() == b.inverse().compose(a.inverse()));
  }
}

TEST_CASE("lexicographic rank and unrank") {
  CHECK(Permutation::unrank(3, 5) == Permutation({3, 2, 1}));
  CHECK_THROWS_AS(Permutation::unrank(3, 6), error);

  for (int n = 0; n <= 6; ++n) {
    std::vector<int> prev;
    for (std::uint64_t r = 0; r < factorial_u64(n); ++r) {
      Permutation s = Permutation::unrank(n, r);
      CHECK(s.rank() == r);
      if (!prev.empty()) CHECK(prev < s.image());
      prev = s.image();
    }
  }
}

TEST_CASE("extension streams") {
  // A full permutation extends only to itself.
  Permutation s({2, 1, 3, 4});
  auto exts = extensions(s.as_points());
  REQUIRE(exts.size() == 1);
  CHECK(exts[0] == s);

  CHECK(extensions(PartialPermutation(4, {})).size() == 24);
  CHECK(extensions(PartialPermutation(4, {Point{1, 1}})).size() == 6);

  // Rank order and exact membership, against a direct filter of all 6!.
  PartialPermutation p(6, {Point{2, 5}, Point{4, 1}});
  std::vector<std::uint64_t> expected;
  for (std::uint64_t r = 0; r < factorial_u64(6); ++r)
    if (Permutation::unrank(6, r).contains(p)) expected.push_back(r);
  std::vector<std::uint64_t> got;
  for_each_extension(p, [&](const Permutation& e) {
    got.push_back(e.rank());
    return true;
  });
  CHECK(got == expected);
  CHECK(got.size() == factorial_u64(4));
}

TEST_CASE("one-line text form") {
  Permutation s({2, 1, 3, 4});
  CHECK(s.to_string() == "2 1 3 4");
  CHECK(Permutation::parse("2 1 3 4") == s);
  CHECK_THROWS_AS(Permutation::parse("2 x 1"), error);
}
