#include "permdiv/family.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <fstream>
#include <sstream>
#include <thread>

namespace permdiv {

static void check_family_n(int n) {
  if (n < 0 || n > kMaxFamilyN) fail(errc::too_large, "families limited to n <= 10");
}

PermFamily::PermFamily(int n) : n_(n) {
  check_family_n(n);
  universe_ = factorial_u64(n);
  bits_.assign((universe_ + 63) / 64, 0);
}

PermFamily::PermFamily(int n, std::vector<std::uint64_t> bits) : n_(n), bits_(std::move(bits)) {
  universe_ = factorial_u64(n);
  recount();
}

void PermFamily::recount() {
  size_ = 0;
  for (std::uint64_t w : bits_) size_ += static_cast<std::uint64_t>(std::popcount(w));
}

PermFamily PermFamily::full(int n) {
  check_family_n(n);
  std::uint64_t u = factorial_u64(n);
  std::vector<std::uint64_t> bits((u + 63) / 64, ~0ull);
  if (u % 64) bits.back() = (1ull << (u % 64)) - 1;
  return PermFamily(n, std::move(bits));
}

bool PermFamily::contains(std::uint64_t rank) const {
  if (rank >= universe_) fail(errc::out_of_range, "rank beyond n!");
  return (bits_[rank / 64] >> (rank % 64)) & 1;
}

void PermFamily::for_each_rank(const std::function<bool(std::uint64_t)>& visit) const {
  for (size_t w = 0; w < bits_.size(); ++w) {
    std::uint64_t word = bits_[w];
    while (word) {
      int b = std::countr_zero(word);
      if (!visit(static_cast<std::uint64_t>(w) * 64 + static_cast<std::uint64_t>(b))) return;
      word &= word - 1;
    }
  }
}

std::vector<Permutation> PermFamily::members() const {
  std::vector<Permutation> out;
  out.reserve(size_);
  for_each_rank([&](std::uint64_t r) {
    out.push_back(Permutation::unrank(n_, r));
    return true;
  });
  return out;
}

static void require_same_family_ground(const PermFamily& a, const PermFamily& b) {
  if (a.n() != b.n()) fail(errc::mismatched_ground, "families live on different ground sizes");
}

PermFamily PermFamily::united(const PermFamily& other) const {
  require_same_family_ground(*this, other);
  std::vector<std::uint64_t> bits = bits_;
  for (size_t i = 0; i < bits.size(); ++i) bits[i] |= other.bits_[i];
  return PermFamily(n_, std::move(bits));
}

PermFamily PermFamily::intersected(const PermFamily& other) const {
  require_same_family_ground(*this, other);
  std::vector<std::uint64_t> bits = bits_;
  for (size_t i = 0; i < bits.size(); ++i) bits[i] &= other.bits_[i];
  return PermFamily(n_, std::move(bits));
}

PermFamily PermFamily::minus(const PermFamily& other) const {
  require_same_family_ground(*this, other);
  std::vector<std::uint64_t> bits = bits_;
  for (size_t i = 0; i < bits.size(); ++i) bits[i] &= ~other.bits_[i];
  return PermFamily(n_, std::move(bits));
}

PermFamily PermFamily::complement() const { return full(n_).minus(*this); }

PermFamily PermFamily::restricted_to_containing(const PartialPermutation& x) const {
  if (x.n() != n_) fail(errc::mismatched_ground, "restriction set on wrong ground");
  Builder b(n_);
  for_each_rank([&](std::uint64_t r) {
    if (Permutation::unrank(n_, r).contains(x)) b.insert(r);
    return true;
  });
  return std::move(b).finish();
}

std::vector<PartialPermutation> PermFamily::quotient(const PartialPermutation& x) const {
  if (x.n() != n_) fail(errc::mismatched_ground, "quotient set on wrong ground");
  std::vector<PartialPermutation> out;
  for_each_rank([&](std::uint64_t r) {
    Permutation s = Permutation::unrank(n_, r);
    if (s.contains(x)) out.push_back(s.as_points().minus(x));
    return true;
  });
  return out;
}

PermFamily PermFamily::with_rank(std::uint64_t rank, bool value) const {
  if (rank >= universe_) fail(errc::out_of_range, "rank beyond n!");
  std::vector<std::uint64_t> bits = bits_;
  if (value)
    bits[rank / 64] |= 1ull << (rank % 64);
  else
    bits[rank / 64] &= ~(1ull << (rank % 64));
  return PermFamily(n_, std::move(bits));
}

PermFamily::Builder::Builder(int n) : n_(n) {
  check_family_n(n);
  universe_ = factorial_u64(n);
  bits_.assign((universe_ + 63) / 64, 0);
}

void PermFamily::Builder::insert(std::uint64_t rank) { bits_[rank / 64] |= 1ull << (rank % 64); }

void PermFamily::Builder::merge(const Builder& other) {
  for (size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
}

PermFamily PermFamily::Builder::finish() && { return PermFamily(n_, std::move(bits_)); }

namespace {

bool passes_filter(const Permutation& s, const FilterSpec& spec) {
  // Short-circuit order: contains, point avoidance, avoid_each, intersect_each.
  if (!s.contains(spec.contains)) return false;
  for (const auto& y : spec.avoid_points)
    if (s.intersects(y)) return false;
  for (const auto& a : spec.avoid_each)
    if (s.intersects(a)) return false;
  for (const auto& g : spec.intersect_each)
    if (!s.intersects(g)) return false;
  return true;
}

// Empty constraints are ground-agnostic (a default-constructed fragment has
// n = 0); everything else must sit on the filter's ground.
FilterSpec normalize_filter(FilterSpec spec) {
  check_family_n(spec.n);
  auto fix = [&](PartialPermutation& p) {
    if (p.n() != spec.n) {
      if (!p.empty()) fail(errc::mismatched_ground, "filter constraint on wrong ground");
      p = PartialPermutation(spec.n, {});
    }
  };
  fix(spec.contains);
  for (auto& p : spec.avoid_points) fix(p);
  for (auto& p : spec.intersect_each) fix(p);
  for (auto& p : spec.avoid_each) fix(p);
  return spec;
}

}  // namespace

PermFamily sigma_filter(const FilterSpec& raw_spec, int threads) {
  FilterSpec spec = normalize_filter(raw_spec);
  if (threads <= 1 || spec.n < 6) {
    PermFamily::Builder b(spec.n);
    // Enumerate only the extensions of the mandatory fragment.
    for_each_extension(spec.contains, [&](const Permutation& s) {
      if (passes_filter(s, spec)) b.insert(s.rank());
      return true;
    });
    return std::move(b).finish();
  }

  // Partition the rank space; each worker fills a private bitset and the
  // results are OR-ed, so the outcome is bit-identical to the sequential run.
  const std::uint64_t universe = factorial_u64(spec.n);
  const int nworkers = std::min<int>(threads, 16);
  std::vector<PermFamily::Builder> parts;
  parts.reserve(static_cast<size_t>(nworkers));
  for (int w = 0; w < nworkers; ++w) parts.emplace_back(spec.n);
  {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (universe + static_cast<std::uint64_t>(nworkers) - 1) / static_cast<std::uint64_t>(nworkers);
    for (int w = 0; w < nworkers; ++w) {
      pool.emplace_back([&, w] {
        const std::uint64_t lo = static_cast<std::uint64_t>(w) * chunk;
        const std::uint64_t hi = std::min(universe, lo + chunk);
        for (std::uint64_t r = lo; r < hi; ++r) {
          Permutation s = Permutation::unrank(spec.n, r);
          if (passes_filter(s, spec)) parts[static_cast<size_t>(w)].insert(r);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (int w = 1; w < nworkers; ++w) parts[0].merge(parts[static_cast<size_t>(w)]);
  return std::move(parts[0]).finish();
}

PermFamily star_family(int n, int row, int col) {
  FilterSpec spec;
  spec.n = n;
  spec.contains = PartialPermutation(n, {Point{row, col}});
  return sigma_filter(spec);
}

PermFamily build_H(int n, int k) {
  check_family_n(n);
  if (!(2 <= k && k <= n - 2)) fail(errc::out_of_range, "build_H needs 2 <= k <= n-2");
  FilterSpec spec;
  spec.n = n;
  spec.contains = identity_segment(k + 1, n, n);
  spec.avoid_points = {PartialPermutation(n, {Point{1, 1}})};
  return sigma_filter(spec);
}

PermFamily neighborhood(const PermFamily& g, int threads) {
  if (g.empty()) fail(errc::empty_input, "neighborhood of an empty family");
  const int n = g.n();
  std::vector<Permutation> targets = g.members();
  auto meets_all = [&](const Permutation& s) {
    for (const Permutation& t : targets)
      if (!s.intersects(t)) return false;
    return true;
  };
  if (threads <= 1 || n < 6) {
    PermFamily::Builder b(n);
    for_each_extension(PartialPermutation(n, {Point{1, 1}}), [&](const Permutation& s) {
      if (meets_all(s)) b.insert(s.rank());
      return true;
    });
    return std::move(b).finish();
  }
  const std::uint64_t universe = factorial_u64(n);
  const int nworkers = std::min<int>(threads, 16);
  std::vector<PermFamily::Builder> parts;
  parts.reserve(static_cast<size_t>(nworkers));
  for (int w = 0; w < nworkers; ++w) parts.emplace_back(n);
  {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (universe + static_cast<std::uint64_t>(nworkers) - 1) / static_cast<std::uint64_t>(nworkers);
    for (int w = 0; w < nworkers; ++w) {
      pool.emplace_back([&, w] {
        const std::uint64_t lo = static_cast<std::uint64_t>(w) * chunk;
        const std::uint64_t hi = std::min(universe, lo + chunk);
        for (std::uint64_t r = lo; r < hi; ++r) {
          Permutation s = Permutation::unrank(n, r);
          if (s(1) == 1 && meets_all(s)) parts[static_cast<size_t>(w)].insert(r);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (int w = 1; w < nworkers; ++w) parts[0].merge(parts[static_cast<size_t>(w)]);
  return std::move(parts[0]).finish();
}

PermFamily build_E(int n, int k) { return build_H(n, k).united(neighborhood(build_H(n, k))); }

FamilyStats stats(const PermFamily& f) {
  FamilyStats st;
  st.size = f.size();
  const int n = f.n();
  if (f.empty()) {
    st.common_intersection_is_full_ground = true;
    st.common_intersection = PartialPermutation(n, {});
    return st;
  }
  std::vector<std::uint64_t> degree(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
  bool first = true;
  std::vector<Point> common;
  f.for_each_rank([&](std::uint64_t r) {
    Permutation s = Permutation::unrank(n, r);
    for (int i = 1; i <= n; ++i) degree[static_cast<size_t>(i - 1) * static_cast<size_t>(n) + static_cast<size_t>(s(i) - 1)]++;
    if (first) {
      common = s.as_points().points();
      first = false;
    } else {
      std::vector<Point> kept;
      for (const Point& p : common)
        if (s(p.row) == p.col) kept.push_back(p);
      common = std::move(kept);
    }
    return true;
  });
  st.max_degree = 0;
  st.max_degree_point = Point{1, 1};
  for (int r = 1; r <= n; ++r)
    for (int c = 1; c <= n; ++c) {
      std::uint64_t d = degree[static_cast<size_t>(r - 1) * static_cast<size_t>(n) + static_cast<size_t>(c - 1)];
      if (d > st.max_degree) {
        st.max_degree = d;
        st.max_degree_point = Point{r, c};
      }
    }
  st.diversity = st.size - st.max_degree;
  st.common_intersection = PartialPermutation(n, std::move(common));
  return st;
}

bool is_intersecting(const PermFamily& f) {
  std::vector<Permutation> ms = f.members();
  for (size_t i = 0; i < ms.size(); ++i)
    for (size_t j = i + 1; j < ms.size(); ++j)
      if (!ms[i].intersects(ms[j])) return false;
  return true;
}

PermFamily maximal_closure(const PermFamily& f, const std::optional<PermFamily>& pool) {
  if (f.empty()) fail(errc::empty_input, "closure of an empty family");
  if (!is_intersecting(f)) fail(errc::not_intersecting, "closure requires an intersecting family");
  const int n = f.n();
  if (pool && pool->n() != n) fail(errc::mismatched_ground, "pool on wrong ground");
  std::vector<Permutation> current = f.members();
  PermFamily::Builder b(n);
  f.for_each_rank([&](std::uint64_t r) {
    b.insert(r);
    return true;
  });
  const std::uint64_t universe = factorial_u64(n);
  for (std::uint64_t r = 0; r < universe; ++r) {
    if (f.contains(r)) continue;
    if (pool && !pool->contains(r)) continue;
    Permutation cand = Permutation::unrank(n, r);
    bool ok = true;
    for (const Permutation& m : current)
      if (!cand.intersects(m)) {
        ok = false;
        break;
      }
    if (ok) {
      b.insert(r);
      current.push_back(std::move(cand));
    }
  }
  return std::move(b).finish();
}

PermFamily relabel(const PermFamily& f, const Permutation& pi, const Permutation& rho) {
  const int n = f.n();
  if (pi.n() != n || rho.n() != n) fail(errc::mismatched_ground, "relabeling on wrong ground");
  PermFamily::Builder b(n);
  f.for_each_rank([&](std::uint64_t r) {
    Permutation s = Permutation::unrank(n, r);
    b.insert(pi.compose(s).compose(rho).rank());
    return true;
  });
  return std::move(b).finish();
}

namespace {

// Sorted multiset of point degrees; invariant under row/column relabeling.
std::vector<std::uint64_t> degree_profile(const PermFamily& f) {
  const int n = f.n();
  std::vector<std::uint64_t> degree(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
  f.for_each_rank([&](std::uint64_t r) {
    Permutation s = Permutation::unrank(n, r);
    for (int i = 1; i <= n; ++i) degree[static_cast<size_t>(i - 1) * static_cast<size_t>(n) + static_cast<size_t>(s(i) - 1)]++;
    return true;
  });
  std::sort(degree.begin(), degree.end());
  return degree;
}

}  // namespace

std::optional<std::pair<Permutation, Permutation>> are_isomorphic(const PermFamily& f, const PermFamily& g) {
  require_same_family_ground(f, g);
  if (f.size() != g.size()) return std::nullopt;
  const int n = f.n();
  if (f.empty()) return std::make_pair(Permutation::identity(n), Permutation::identity(n));
  if (degree_profile(f) != degree_profile(g)) return std::nullopt;

  std::vector<Permutation> fm = f.members();
  const std::uint64_t universe = factorial_u64(n);
  // A relabeling sends the point (i,j) to (r(i), c(j)); memberwise this is
  // s -> c o s o r^{-1}, so the witness pair is (pi, rho) = (c, r^{-1}).
  for (std::uint64_t rr = 0; rr < universe; ++rr) {
    Permutation row_map = Permutation::unrank(n, rr);
    Permutation row_inv = row_map.inverse();
    for (std::uint64_t cr = 0; cr < universe; ++cr) {
      Permutation col_map = Permutation::unrank(n, cr);
      bool ok = true;
      for (const Permutation& s : fm) {
        Permutation mapped = col_map.compose(s).compose(row_inv);
        if (!g.contains(mapped.rank())) {
          ok = false;
          break;
        }
      }
      if (ok) return std::make_pair(col_map, row_inv);
    }
  }
  return std::nullopt;
}

std::string family_to_text(const PermFamily& f) {
  std::ostringstream os;
  os << "n=" << f.n() << " size=" << f.size() << '\n';
  f.for_each_rank([&](std::uint64_t r) {
    os << Permutation::unrank(f.n(), r).to_string() << '\n';
    return true;
  });
  return os.str();
}

PermFamily family_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  if (!std::getline(is, header)) fail(errc::parse_error, "missing family header");
  int n = -1;
  std::uint64_t size = 0;
  if (sscanf(header.c_str(), "n=%d size=%llu", &n, reinterpret_cast<unsigned long long*>(&size)) != 2)
    fail(errc::parse_error, "bad family header '" + header + "'");
  check_family_n(n);
  PermFamily::Builder b(n);
  std::string line;
  std::uint64_t count = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    Permutation s = Permutation::parse(line);
    if (s.n() != n) fail(errc::parse_error, "member ground size mismatch in family file");
    b.insert(s.rank());
    ++count;
  }
  if (count != size) fail(errc::parse_error, "family header count disagrees with member lines");
  return std::move(b).finish();
}

static void put_u64_le(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

static std::uint64_t get_u64_le(const std::vector<std::uint8_t>& in, size_t pos) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in[pos + static_cast<size_t>(i)]) << (8 * i);
  return v;
}

std::vector<std::uint8_t> family_to_ranks(const PermFamily& f) {
  std::vector<std::uint8_t> out;
  out.reserve(16 + 8 * f.size());
  put_u64_le(out, static_cast<std::uint64_t>(f.n()));
  put_u64_le(out, f.size());
  f.for_each_rank([&](std::uint64_t r) {
    put_u64_le(out, r);
    return true;
  });
  return out;
}

PermFamily family_from_ranks(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 16 || bytes.size() % 8 != 0) fail(errc::parse_error, "truncated rank-list data");
  int n = static_cast<int>(get_u64_le(bytes, 0));
  std::uint64_t count = get_u64_le(bytes, 8);
  check_family_n(n);
  if (bytes.size() != 16 + 8 * count) fail(errc::parse_error, "rank-list length disagrees with header");
  PermFamily::Builder b(n);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t r = get_u64_le(bytes, 16 + 8 * static_cast<size_t>(i));
    if (r >= factorial_u64(n)) fail(errc::parse_error, "rank beyond n! in rank-list data");
    b.insert(r);
  }
  return std::move(b).finish();
}

void family_save(const PermFamily& f, const std::string& path, bool binary) {
  std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
  if (!os) fail(errc::io_error, "cannot open '" + path + "' for writing");
  if (binary) {
    auto bytes = family_to_ranks(f);
    os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  } else {
    os << family_to_text(f);
  }
  if (!os) fail(errc::io_error, "write to '" + path + "' failed");
}

PermFamily family_load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(errc::io_error, "cannot open '" + path + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  // Text files start with the "n=" header; anything else is the rank list.
  if (bytes.size() >= 2 && bytes[0] == 'n' && bytes[1] == '=')
    return family_from_text(std::string(bytes.begin(), bytes.end()));
  return family_from_ranks(bytes);
}

}  // namespace permdiv
