#include "doctest.h"
#include "permdiv/points.hpp"

using namespace permdiv;

TEST_CASE("partial permutation validation") {
  PartialPermutation p(4, {Point{1, 2}, Point{2, 1}});
  CHECK(p.size() == 2);
  CHECK(p.contains(Point{1, 2}));
  CHECK(p.col_of(2) == 1);
  CHECK(p.col_of(3) == 0);

  CHECK_THROWS_AS(PartialPermutation(4, {Point{1, 2}, Point{1, 3}}), error);
  CHECK_THROWS_AS(PartialPermutation(4, {Point{1, 2}, Point{3, 2}}), error);
  CHECK_THROWS_AS(PartialPermutation(4, {Point{1, 5}}), error);
  CHECK_THROWS_AS(PartialPermutation(4, {Point{0, 1}}), error);

  try {
    PartialPermutation(4, {Point{1, 2}, Point{1, 3}});
    FAIL("expected row collision");
  } catch (const error& e) {
    CHECK(e.code() == errc::row_collision);
  }
}

TEST_CASE("identity segments") {
  CHECK(identity_segment(3, 4, 4) == PartialPermutation(4, {Point{3, 3}, Point{4, 4}}));
  CHECK(identity_segment(1, 1, 5).size() == 1);
  CHECK(identity_segment(2, 6, 6).size() == 5);
  CHECK(identity_segment(2, 4, 4) == PartialPermutation(4, {Point{2, 2}, Point{3, 3}, Point{4, 4}}));
  CHECK_THROWS_AS(identity_segment(3, 2, 4), error);
  CHECK_THROWS_AS(identity_segment(1, 5, 4), error);
}

TEST_CASE("partial permutation set operations") {
  PartialPermutation a(5, {Point{1, 2}, Point{3, 3}});
  PartialPermutation b(5, {Point{3, 3}, Point{4, 4}});
  CHECK(a.intersects(b));
  CHECK(!a.intersects(PartialPermutation(5, {Point{2, 2}})));
  CHECK(a.united(PartialPermutation(5, {Point{4, 4}})).size() == 3);
  CHECK(a.minus(b) == PartialPermutation(5, {Point{1, 2}}));
  CHECK(PartialPermutation(5, {Point{1, 2}}).is_subset_of(a));
  CHECK(!a.is_subset_of(b));
  CHECK(a.compatible(Point{2, 1}));
  CHECK(!a.compatible(Point{1, 4}));
  CHECK(!a.compatible(Point{4, 2}));
  CHECK_THROWS_AS(a.united(PartialPermutation(5, {Point{1, 4}})), error);
  CHECK_THROWS_AS(a.intersects(PartialPermutation(4, {Point{1, 2}})), error);
}

TEST_CASE("partial permutation text form") {
  PartialPermutation p(4, {Point{3, 3}, Point{1, 2}});
  CHECK(p.to_string() == "1->2,3->3");
  CHECK(PartialPermutation::parse(4, "1->2,3->3") == p);
  CHECK(PartialPermutation::parse(4, "") == PartialPermutation(4, {}));
  CHECK(PartialPermutation(4, {}).to_string() == "");
  CHECK_THROWS_AS(PartialPermutation::parse(4, "1-2"), error);
  CHECK_THROWS_AS(PartialPermutation::parse(4, "1->2,1->3"), error);
}
