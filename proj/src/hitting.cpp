#include "permdiv/hitting.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace permdiv {

namespace {

bool hits(const std::vector<Point>& candidate, const PartialPermutation& member) {
  for (const Point& p : member.points())
    if (std::binary_search(candidate.begin(), candidate.end(), p)) return true;
  return false;
}

int first_unhit(const std::vector<PartialPermutation>& family, const std::vector<Point>& candidate) {
  for (size_t i = 0; i < family.size(); ++i)
    if (!hits(candidate, family[i])) return static_cast<int>(i);
  return -1;
}

void branch(const std::vector<PartialPermutation>& family, std::vector<Point>& candidate, int max_size,
            HittingSetReport& report, std::set<std::vector<Point>>& found) {
  report.nodes_by_depth[static_cast<int>(candidate.size())]++;
  int violated = first_unhit(family, candidate);
  if (violated < 0) {
    found.insert(candidate);
    return;  // extensions would be supersets
  }
  if (static_cast<int>(candidate.size()) >= max_size) return;
  for (const Point& x : family[static_cast<size_t>(violated)].points()) {
    auto pos = std::lower_bound(candidate.begin(), candidate.end(), x);
    candidate.insert(pos, x);
    branch(family, candidate, max_size, report, found);
    candidate.erase(std::find(candidate.begin(), candidate.end(), x));
  }
}

}  // namespace

HittingSetReport minimal_hitting_sets(const std::vector<PartialPermutation>& family, int max_size) {
  if (family.empty()) fail(errc::empty_input, "hitting sets of an empty family");
  HittingSetReport report;
  for (const auto& m : family)
    if (m.empty()) {
      report.unhittable = true;
      return report;
    }

  std::set<std::vector<Point>> found;
  std::vector<Point> candidate;
  branch(family, candidate, max_size, report, found);

  // The procedure can reach a hitting set that strictly contains a smaller one
  // found along another path; keep only the inclusion-minimal sets.
  std::vector<std::vector<Point>> all(found.begin(), found.end());
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<std::vector<Point>> minimal;
  for (const auto& s : all) {
    bool dominated = false;
    for (const auto& smaller : minimal) {
      if (std::includes(s.begin(), s.end(), smaller.begin(), smaller.end())) {
        dominated = true;
        break;
      }
    }
    if (!dominated) minimal.push_back(s);
  }
  for (auto& s : minimal) report.by_size[static_cast<int>(s.size())].push_back(std::move(s));
  return report;
}

HittingBoundReport hitting_bound_check(const std::vector<PartialPermutation>& family, int t) {
  if (family.empty()) fail(errc::empty_input, "hitting bound check on an empty family");
  HittingBoundReport rep;
  for (const auto& m : family) {
    if (m.size() > t - 2)
      fail(errc::precondition_violation, "member of size " + std::to_string(m.size()) + " exceeds t-2");
    for (const Point& p : m.points())
      if (p.row < 2 || p.row > t || p.col < 2 || p.col > t)
        fail(errc::precondition_violation, "member point outside [2,t]^2");
  }

  PartialPermutation common = family.front();
  for (const auto& m : family) {
    std::vector<Point> kept;
    for (const Point& p : common.points())
      if (m.contains(p)) kept.push_back(p);
    common = PartialPermutation(common.n(), std::move(kept));
  }
  rep.common_point_free = common.empty();

  rep.sets = minimal_hitting_sets(family, t - 1);
  for (int i = 2; i <= t - 1; ++i) {
    std::uint64_t bound = 1;
    for (int e = 0; e < i; ++e) bound *= static_cast<std::uint64_t>(t - 2);
    rep.bounds[i] = bound;
    auto it = rep.sets.by_size.find(i);
    rep.counts[i] = (it == rep.sets.by_size.end()) ? 0 : it->second.size();
    if (rep.counts[i] > bound) rep.bound_holds = false;
  }
  return rep;
}

std::map<int, std::vector<std::vector<Point>>> minimal_hitting_sets_by_scan(
    const std::vector<PartialPermutation>& family, int t, int max_size) {
  if (family.empty()) fail(errc::empty_input, "hitting sets of an empty family");
  std::vector<Point> grid;
  for (int r = 2; r <= t; ++r)
    for (int c = 2; c <= t; ++c) grid.push_back(Point{r, c});
  const size_t g = grid.size();
  if (g > 25) fail(errc::too_large, "subset scan limited to t <= 5 grids");

  std::vector<std::vector<Point>> hitting;
  for (std::uint64_t mask = 0; mask < (1ull << g); ++mask) {
    if (std::popcount(mask) > max_size) continue;
    std::vector<Point> candidate;
    for (size_t b = 0; b < g; ++b)
      if ((mask >> b) & 1) candidate.push_back(grid[b]);
    bool ok = true;
    for (const auto& m : family)
      if (!hits(candidate, m)) {
        ok = false;
        break;
      }
    if (ok) hitting.push_back(std::move(candidate));
  }
  std::sort(hitting.begin(), hitting.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<std::vector<Point>> minimal;
  for (const auto& s : hitting) {
    bool dominated = false;
    for (const auto& smaller : minimal)
      if (std::includes(s.begin(), s.end(), smaller.begin(), smaller.end())) {
        dominated = true;
        break;
      }
    if (!dominated) minimal.push_back(s);
  }
  std::map<int, std::vector<std::vector<Point>>> by_size;
  for (auto& s : minimal) by_size[static_cast<int>(s.size())].push_back(std::move(s));
  return by_size;
}

}  // namespace permdiv
