#include "permdiv/extremal.hpp"

#include <algorithm>
#include <bit>

namespace permdiv {

IntersectionGraph::IntersectionGraph(int n) : n_(n) {
  if (n < 1 || n > 6) fail(errc::too_large, "intersection graph limited to n <= 6");
  vertex_count_ = static_cast<std::uint32_t>(factorial_u64(n));
  const size_t words = (vertex_count_ + 63) / 64;
  rows_.assign(vertex_count_, std::vector<std::uint64_t>(words, 0));
  std::vector<Permutation> perms;
  perms.reserve(vertex_count_);
  for (std::uint32_t r = 0; r < vertex_count_; ++r) perms.push_back(Permutation::unrank(n, r));
  for (std::uint32_t a = 0; a < vertex_count_; ++a)
    for (std::uint32_t b = a + 1; b < vertex_count_; ++b)
      if (perms[a].intersects(perms[b])) {
        rows_[a][b / 64] |= 1ull << (b % 64);
        rows_[b][a / 64] |= 1ull << (a % 64);
      }
}

std::uint32_t IntersectionGraph::degree(std::uint32_t v) const {
  std::uint32_t d = 0;
  for (std::uint64_t w : rows_[v]) d += static_cast<std::uint32_t>(std::popcount(w));
  return d;
}

namespace {

struct Searcher {
  const IntersectionGraph& graph;
  int n;
  std::uint64_t gamma0;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool aborted = false;

  std::vector<std::vector<int>> point_ids;  // per vertex: n cell ids
  std::vector<int> degree;                  // point degrees of the current clique
  std::vector<std::uint32_t> clique;

  std::uint64_t best_size = 0;
  std::vector<std::uint32_t> best_witness;

  Searcher(const IntersectionGraph& g, std::uint64_t gamma0_, std::uint64_t budget_)
      : graph(g), n(g.n()), gamma0(gamma0_), budget(budget_) {
    point_ids.reserve(graph.vertex_count());
    for (std::uint32_t v = 0; v < graph.vertex_count(); ++v) {
      Permutation s = Permutation::unrank(n, v);
      std::vector<int> ids;
      ids.reserve(static_cast<size_t>(n));
      for (int i = 1; i <= n; ++i) ids.push_back((i - 1) * n + (s(i) - 1));
      point_ids.push_back(std::move(ids));
    }
    degree.assign(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
  }

  int max_clique_degree() const {
    int d = 0;
    for (int x : degree) d = std::max(d, x);
    return d;
  }

  void record_leaf() {
    std::uint64_t size = clique.size();
    std::uint64_t gamma = size - static_cast<std::uint64_t>(max_clique_degree());
    if (gamma < gamma0) return;
    if (size > best_size || (size == best_size && clique < best_witness)) {
      best_size = size;
      best_witness = clique;
    }
  }

  // Greedy coloring upper bound: candidates are grouped into classes of
  // pairwise non-adjacent vertices; a clique takes at most one per class.
  // Returns candidates reordered by class with their class numbers.
  void color_sort(const std::vector<std::uint32_t>& cands, std::vector<std::uint32_t>& ordered,
                  std::vector<int>& colors) const {
    std::vector<std::vector<std::uint32_t>> classes;
    for (std::uint32_t v : cands) {
      bool placed = false;
      for (auto& cls : classes) {
        bool independent = true;
        for (std::uint32_t u : cls)
          if (graph.adjacent(u, v)) {
            independent = false;
            break;
          }
        if (independent) {
          cls.push_back(v);
          placed = true;
          break;
        }
      }
      if (!placed) classes.push_back({v});
    }
    ordered.clear();
    colors.clear();
    for (size_t c = 0; c < classes.size(); ++c)
      for (std::uint32_t v : classes[c]) {
        ordered.push_back(v);
        colors.push_back(static_cast<int>(c) + 1);
      }
  }

  void expand(const std::vector<std::uint32_t>& cands) {
    if (aborted) return;
    if (++nodes > budget) {
      aborted = true;
      return;
    }
    if (cands.empty()) {
      record_leaf();
      return;
    }
    // Diversity is monotone under adding members, so gamma(C u P) bounds the
    // diversity of every completion; inside a star subtree it hits 0 at once.
    if (gamma0 > 0) {
      std::vector<int> total_degree = degree;
      for (std::uint32_t v : cands)
        for (int id : point_ids[v]) total_degree[static_cast<size_t>(id)]++;
      int max_total = 0;
      for (int d : total_degree) max_total = std::max(max_total, d);
      if (clique.size() + cands.size() - static_cast<std::uint64_t>(max_total) < gamma0) return;
    }

    std::vector<std::uint32_t> ordered;
    std::vector<int> colors;
    color_sort(cands, ordered, colors);

    // Diversity never drops when a member is added, so any clique meeting the
    // threshold extends to a leaf that still meets it; recording at leaves
    // only is complete.
    for (size_t i = ordered.size(); i-- > 0;) {
      if (clique.size() + static_cast<std::uint64_t>(colors[i]) <= best_size) return;
      std::uint32_t v = ordered[i];
      clique.push_back(v);
      for (int id : point_ids[v]) degree[static_cast<size_t>(id)]++;
      std::vector<std::uint32_t> next;
      next.reserve(ordered.size());
      for (size_t j = 0; j < i; ++j)
        if (graph.adjacent(ordered[j], v)) next.push_back(ordered[j]);
      expand(next);
      for (int id : point_ids[v]) degree[static_cast<size_t>(id)]--;
      clique.pop_back();
      if (aborted) return;
    }
  }
};

}  // namespace

SearchOutcome max_intersecting(int n, std::uint64_t min_diversity, std::uint64_t budget) {
  if (n < 1 || n > 5) fail(errc::too_large, "exact search limited to n <= 5");
  IntersectionGraph graph(n);
  Searcher searcher(graph, min_diversity, budget);
  std::vector<std::uint32_t> all(graph.vertex_count());
  for (std::uint32_t v = 0; v < graph.vertex_count(); ++v) all[v] = v;
  searcher.expand(all);
  SearchOutcome out;
  out.best_size = searcher.best_size;
  out.witness = searcher.best_witness;
  std::sort(out.witness.begin(), out.witness.end());
  out.exact = !searcher.aborted;
  out.nodes = searcher.nodes;
  return out;
}

std::vector<std::vector<std::uint32_t>> all_maximum_witnesses(int n, std::uint64_t min_diversity,
                                                              std::uint64_t max_size) {
  if (n < 1 || n > 4) fail(errc::too_large, "witness enumeration limited to n <= 4");
  const std::uint32_t v_count = static_cast<std::uint32_t>(factorial_u64(n));
  IntersectionGraph graph(n);
  std::vector<std::vector<std::uint32_t>> found;
  std::vector<std::uint32_t> current;

  // Plain subset DFS in ascending rank order; every clique of the target size
  // appears exactly once.
  auto dfs = [&](auto&& self, std::uint32_t next) -> void {
    if (current.size() == max_size) {
      PermFamily fam = family_from_ranks_list(n, current);
      if (stats(fam).diversity >= min_diversity) found.push_back(current);
      return;
    }
    for (std::uint32_t v = next; v < v_count; ++v) {
      if (v_count - v < max_size - current.size()) break;
      bool ok = true;
      for (std::uint32_t u : current)
        if (!graph.adjacent(u, v)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      current.push_back(v);
      self(self, v + 1);
      current.pop_back();
    }
  };
  dfs(dfs, 0);
  return found;
}

PermFamily family_from_ranks_list(int n, const std::vector<std::uint32_t>& ranks) {
  PermFamily::Builder b(n);
  for (std::uint32_t r : ranks) b.insert(r);
  return std::move(b).finish();
}

ExtremalReport frontier(int n, std::uint64_t budget) {
  ExtremalReport report;
  report.n = n;
  std::vector<PermFamily> e_families;
  std::vector<int> e_ks;
  for (int k = 2; k <= n - 2; ++k) {
    e_families.push_back(build_E(n, k));
    e_ks.push_back(k);
  }
  for (std::uint64_t gamma0 = 0;; ++gamma0) {
    SearchOutcome outcome = max_intersecting(n, gamma0, budget);
    if (outcome.best_size == 0) break;
    FrontierEntry entry;
    entry.gamma0 = gamma0;
    entry.max_size = outcome.best_size;
    entry.exact = outcome.exact;
    entry.witness_ranks = outcome.witness;
    PermFamily witness = family_from_ranks_list(n, outcome.witness);
    for (size_t i = 0; i < e_families.size(); ++i) {
      if (e_families[i].size() != witness.size()) continue;
      if (are_isomorphic(witness, e_families[i])) {
        entry.isomorphic_to_E_k = e_ks[i];
        break;
      }
    }
    if (gamma0 == 0) report.ekr_max = outcome.best_size;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace permdiv
