#include "permdiv/spread.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>

namespace permdiv {

PointFamily to_point_family(const PermFamily& f) {
  PointFamily out;
  out.n = f.n();
  out.members.reserve(f.size());
  f.for_each_rank([&](std::uint64_t r) {
    out.members.push_back(Permutation::unrank(f.n(), r).as_points());
    return true;
  });
  return out;
}

AmbientSpace::AmbientSpace(int m, PartialPermutation base) : m_(m), base_(std::move(base)) {
  if (base_.n() != m_) fail(errc::mismatched_ground, "ambient base on wrong ground");
}

ExactCount AmbientSpace::size() const { return factorial(m_ - base_.size()); }

ExactCount AmbientSpace::members_containing(const PartialPermutation& s) const {
  if (s.n() != m_) fail(errc::mismatched_ground, "set on wrong ground");
  // Count points of s beyond the base, rejecting row/col collisions with it.
  int extra = 0;
  for (const Point& p : s.points()) {
    if (base_.contains(p)) continue;
    if (!base_.compatible(p)) return 0;
    ++extra;
  }
  // s itself is a valid partial permutation, so no further collisions among
  // its own points are possible.
  return factorial(m_ - base_.size() - extra);
}

bool AmbientSpace::has_member(const PartialPermutation& p) const {
  if (p.n() != m_) return false;
  int extra = 0;
  for (const Point& q : p.points()) {
    if (base_.contains(q)) continue;
    if (!base_.compatible(q)) return false;
    ++extra;
  }
  return base_.size() + extra == m_;
}

AmbientSpace AmbientSpace::quotient(const PartialPermutation& s) const {
  return AmbientSpace(m_, base_.united(s));
}

namespace {

constexpr int kMaxSubsetMember = 16;

// Multiplicity of every realizable subset: how many members contain it.
std::map<std::vector<Point>, std::uint64_t> subset_counts(const std::vector<PartialPermutation>& members,
                                                          int max_size) {
  std::map<std::vector<Point>, std::uint64_t> counts;
  for (const auto& m : members) {
    const auto& pts = m.points();
    const int k = m.size();
    if (k > kMaxSubsetMember) fail(errc::too_large, "member too large for subset enumeration");
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      if (std::popcount(mask) > max_size) continue;
      std::vector<Point> subset;
      for (int b = 0; b < k; ++b)
        if ((mask >> b) & 1) subset.push_back(pts[static_cast<size_t>(b)]);
      counts[subset]++;
    }
  }
  return counts;
}

ExactCount int_pow(const ExactCount& base, int exp) {
  ExactCount r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

SpreadCheck is_r_spread(const SetFamily& f, const Rational& r) {
  if (f.members.empty()) fail(errc::empty_input, "spread check on an empty family");
  if (r <= 0) fail(errc::out_of_range, "spread parameter must be positive");
  const ExactCount p = boost::multiprecision::numerator(r);
  const ExactCount q = boost::multiprecision::denominator(r);

  std::map<std::vector<int>, std::uint64_t> counts;
  for (const auto& m : f.members) {
    const int k = static_cast<int>(m.size());
    if (k > kMaxSubsetMember) fail(errc::too_large, "member too large for subset enumeration");
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      std::vector<int> subset;
      for (int b = 0; b < k; ++b)
        if ((mask >> b) & 1) subset.push_back(m[static_cast<size_t>(b)]);
      counts[subset]++;
    }
  }

  SpreadCheck check;
  const ExactCount total = f.members.size();
  Rational worst_ratio = 1;  // the empty set always sits at ratio 1
  for (const auto& [subset, cnt] : counts) {
    const int s = static_cast<int>(subset.size());
    // violation iff |F(X)| r^{|X|} > |F|
    Rational ratio(ExactCount(cnt) * int_pow(p, s), total * int_pow(q, s));
    if (ratio > 1 && (check.holds || ratio > worst_ratio)) {
      check.holds = false;
      worst_ratio = ratio;
      check.witness_elements = subset;
    }
  }
  return check;
}

SetFamily to_set_family(const PointFamily& f) {
  SetFamily out;
  out.ground = f.n * f.n;
  out.members.reserve(f.members.size());
  for (const auto& m : f.members) {
    std::vector<int> member;
    member.reserve(static_cast<size_t>(m.size()));
    for (const Point& p : m.points()) member.push_back((p.row - 1) * f.n + (p.col - 1));
    std::sort(member.begin(), member.end());
    out.members.push_back(std::move(member));
  }
  return out;
}

SpreadCheck is_r_spread(const PointFamily& f, const Rational& r) {
  SetFamily sf = to_set_family(f);
  SpreadCheck check = is_r_spread(sf, r);
  if (check.witness_elements) {
    std::vector<Point> pts;
    for (int e : *check.witness_elements) pts.push_back(Point{e / f.n + 1, e % f.n + 1});
    check.witness_points = PartialPermutation(f.n, std::move(pts));
  }
  return check;
}

RqSpreadCheck is_rq_spread(const PointFamily& a, const Rational& r, const Rational& q,
                           std::uint64_t budget, std::uint64_t seed) {
  if (a.members.empty()) fail(errc::empty_input, "spread check on an empty family");
  if (q < 0) fail(errc::out_of_range, "q must be nonnegative");
  const int q_floor = static_cast<int>(boost::multiprecision::numerator(q) / boost::multiprecision::denominator(q));

  auto counts = subset_counts(a.members, q_floor);
  std::vector<const std::vector<Point>*> quotient_sets;
  quotient_sets.reserve(counts.size());
  for (const auto& [subset, cnt] : counts) quotient_sets.push_back(&subset);

  // Rough work estimate: members containing S times subset enumeration cost.
  std::uint64_t est = 0;
  for (const auto& [subset, cnt] : counts) est += cnt << 8;
  RqSpreadCheck check;
  std::vector<size_t> order(quotient_sets.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (est > budget) {
    check.exhaustive = false;
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    size_t keep = std::max<size_t>(1, order.size() * budget / std::max<std::uint64_t>(est, 1));
    order.resize(keep);
    std::sort(order.begin(), order.end());
  }

  for (size_t idx : order) {
    const std::vector<Point>& s_points = *quotient_sets[idx];
    PartialPermutation s(a.n, s_points);
    PointFamily quotient;
    quotient.n = a.n;
    for (const auto& m : a.members)
      if (s.is_subset_of(m)) quotient.members.push_back(m.minus(s));
    SpreadCheck sub = is_r_spread(quotient, r);
    if (!sub.holds) {
      check.holds = false;
      check.witness_quotient = s;
      check.witness_set = sub.witness_points;
      return check;
    }
  }
  return check;
}

HomogeneityCheck is_homogeneous(const PointFamily& f, const AmbientSpace& a, const Rational& tau) {
  if (f.members.empty()) fail(errc::empty_input, "homogeneity check on an empty family");
  for (const auto& m : f.members)
    if (!a.has_member(m)) fail(errc::not_subfamily, "family member outside the ambient space");
  const ExactCount p = boost::multiprecision::numerator(tau);
  const ExactCount q = boost::multiprecision::denominator(tau);
  const ExactCount ambient_size = a.size();
  const ExactCount total = f.members.size();

  auto counts = subset_counts(f.members, kMaxSubsetMember);
  HomogeneityCheck check;
  Rational worst_ratio = 1;
  for (const auto& [subset, cnt] : counts) {
    const int s = static_cast<int>(subset.size());
    PartialPermutation sp(a.m(), subset);
    ExactCount quotient_size = a.members_containing(sp);
    // violation iff |F(S)| |A| > tau^{|S|} |A(S)| |F|
    ExactCount lhs = ExactCount(cnt) * ambient_size * int_pow(q, s);
    ExactCount rhs = int_pow(p, s) * quotient_size * total;
    if (lhs > rhs) {
      Rational ratio(lhs, rhs);
      if (check.holds || ratio > worst_ratio) {
        check.holds = false;
        worst_ratio = ratio;
        check.worst = sp;
      }
    }
  }
  return check;
}

bool qualifies(const PointFamily& f, const AmbientSpace& a, const Rational& tau, const PartialPermutation& s) {
  const ExactCount p = boost::multiprecision::numerator(tau);
  const ExactCount q = boost::multiprecision::denominator(tau);
  std::uint64_t cnt = 0;
  for (const auto& m : f.members)
    if (s.is_subset_of(m)) ++cnt;
  // |F(S)| |A| >= tau^{|S|} |A(S)| |F|
  ExactCount lhs = ExactCount(cnt) * a.size() * int_pow(q, s.size());
  ExactCount rhs = int_pow(p, s.size()) * a.members_containing(s) * ExactCount(f.members.size());
  return lhs >= rhs;
}

PartialPermutation find_maximal_qualifying_set(const PointFamily& f, const AmbientSpace& a, const Rational& tau) {
  if (f.members.empty()) fail(errc::empty_input, "qualifying set of an empty family");
  const ExactCount p = boost::multiprecision::numerator(tau);
  const ExactCount q = boost::multiprecision::denominator(tau);
  const ExactCount ambient_size = a.size();
  const ExactCount total = f.members.size();

  // Only sets contained in some member can satisfy the (positive) threshold.
  auto counts = subset_counts(f.members, kMaxSubsetMember);
  std::map<std::vector<Point>, bool> qualifying;
  for (const auto& [subset, cnt] : counts) {
    const int s = static_cast<int>(subset.size());
    PartialPermutation sp(a.m(), subset);
    ExactCount lhs = ExactCount(cnt) * ambient_size * int_pow(q, s);
    ExactCount rhs = int_pow(p, s) * a.members_containing(sp) * total;
    qualifying[subset] = lhs >= rhs;
  }

  std::vector<Point> current;  // empty set always qualifies
  for (;;) {
    // Greedy step: smallest point whose extension is realizable and qualifies.
    bool extended = false;
    for (const auto& [subset, ok] : qualifying) {
      if (!ok || subset.size() != current.size() + 1) continue;
      if (!std::includes(subset.begin(), subset.end(), current.begin(), current.end())) continue;
      current = subset;
      extended = true;
      break;  // map order is (size, lex)-canonical within a size class
    }
    if (extended) continue;
    // Single-point extensions can stall below a larger qualifying superset;
    // jump to the smallest qualifying strict superset if one exists.
    bool jumped = false;
    for (const auto& [subset, ok] : qualifying) {
      if (!ok || subset.size() <= current.size()) continue;
      if (!std::includes(subset.begin(), subset.end(), current.begin(), current.end())) continue;
      current = subset;
      jumped = true;
      break;
    }
    if (!jumped) break;
  }
  return PartialPermutation(a.m(), current);
}

SpreadDecomposition spread_approximate(const PointFamily& f, const AmbientSpace& a, const Rational& tau, int q) {
  if (f.members.empty()) fail(errc::empty_input, "decomposition of an empty family");
  if (tau <= 1) fail(errc::out_of_range, "tau must exceed 1");
  if (q < 0) fail(errc::out_of_range, "q must be nonnegative");
  for (const auto& m : f.members)
    if (!a.has_member(m)) fail(errc::not_subfamily, "family member outside the ambient space");

  SpreadDecomposition dec;
  dec.tau = tau;
  dec.q = q;
  PointFamily cur = f;
  std::sort(cur.members.begin(), cur.members.end());
  while (!cur.members.empty()) {
    PartialPermutation s = find_maximal_qualifying_set(cur, a, tau);
    if (s.size() > q) {
      dec.oversized_set = s;
      dec.residual = cur.members;
      return dec;
    }
    CoverPart part;
    part.cover = s;
    PointFamily rest;
    rest.n = cur.n;
    for (const auto& m : cur.members) {
      if (s.is_subset_of(m))
        part.members.push_back(m);
      else
        rest.members.push_back(m);
    }
    dec.covers.push_back(std::move(part));
    cur = std::move(rest);
  }
  return dec;
}

DecompositionAudit audit_decomposition(const PointFamily& f, const AmbientSpace& a,
                                       const SpreadDecomposition& dec) {
  DecompositionAudit audit;

  std::vector<PartialPermutation> combined = dec.residual;
  for (const auto& part : dec.covers) combined.insert(combined.end(), part.members.begin(), part.members.end());
  std::vector<PartialPermutation> input = f.members;
  std::sort(combined.begin(), combined.end());
  std::sort(input.begin(), input.end());
  audit.partition_exact = combined == input;

  audit.covers_contained = true;
  for (const auto& part : dec.covers)
    for (const auto& m : part.members)
      if (!part.cover.is_subset_of(m)) audit.covers_contained = false;

  audit.homogeneity_ok = true;
  for (const auto& part : dec.covers) {
    PointFamily quotient;
    quotient.n = f.n;
    for (const auto& m : part.members) quotient.members.push_back(m.minus(part.cover));
    if (!is_homogeneous(quotient, a.quotient(part.cover), dec.tau).holds) audit.homogeneity_ok = false;
  }

  const ExactCount p = boost::multiprecision::numerator(dec.tau);
  const ExactCount q_den = boost::multiprecision::denominator(dec.tau);
  audit.residual_bound = Rational(a.size() * int_pow(q_den, dec.q + 1), int_pow(p, dec.q + 1));
  audit.residual_bound_ok = Rational(ExactCount(dec.residual.size())) <= audit.residual_bound;
  return audit;
}

bool cross_intersecting(const std::vector<PartialPermutation>& s1, const std::vector<PartialPermutation>& s2) {
  if (s1.empty() || s2.empty()) return true;
  for (const auto& a : s1)
    for (const auto& b : s2) {
      bool shared = false;
      for (const Point& p : a.points())
        if (std::binary_search(b.points().begin(), b.points().end(), p)) {
          shared = true;
          break;
        }
      if (!shared) return false;
    }
  return true;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

SpreadTrialResult spread_lemma_trial(const SetFamily& f, const Rational& r, double m, double delta,
                                     std::uint64_t trials, std::uint64_t seed, bool multi_round) {
  if (trials == 0) fail(errc::out_of_range, "need at least one trial");
  if (m <= 0 || delta <= 0) fail(errc::out_of_range, "m and delta must be positive");
  SpreadCheck spread = is_r_spread(f, r);
  if (!spread.holds) fail(errc::not_spread, "family is not r-spread for the given r");

  size_t max_member = 0;
  for (const auto& mem : f.members) max_member = std::max(max_member, mem.size());

  SpreadTrialResult res;
  res.trials = trials;
  res.seed = seed;
  res.inclusion_probability = std::min(m * delta, 1.0);

  const int rounds = std::max(1, static_cast<int>(std::llround(m)));
  std::vector<char> in_w(static_cast<size_t>(f.ground));
  std::uint64_t successes = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(t + 1)));
    if (!multi_round) {
      for (int e = 0; e < f.ground; ++e) in_w[static_cast<size_t>(e)] = uniform01(rng) < res.inclusion_probability;
    } else {
      std::fill(in_w.begin(), in_w.end(), 0);
      for (int round = 0; round < rounds; ++round)
        for (int e = 0; e < f.ground; ++e)
          if (uniform01(rng) < delta) in_w[static_cast<size_t>(e)] = 1;
    }
    for (const auto& mem : f.members) {
      bool covered = true;
      for (int e : mem)
        if (!in_w[static_cast<size_t>(e)]) {
          covered = false;
          break;
        }
      if (covered) {
        ++successes;
        break;
      }
    }
  }
  res.empirical = static_cast<double>(successes) / static_cast<double>(trials);
  res.std_error = std::sqrt(res.empirical * (1 - res.empirical) / static_cast<double>(trials));

  const double rdelta = r.convert_to<double>() * delta;
  if (rdelta > 1 && std::log2(rdelta) > 0) {
    double raw = 1 - std::pow(2 / std::log2(rdelta), m) * static_cast<double>(max_member);
    res.bound_positive = raw > 0;
    res.bound = std::clamp(raw, 0.0, 1.0);
  } else {
    res.bound_positive = false;
    res.bound = 0;
  }
  return res;
}

double singleton_cover_probability(int g, double inclusion_probability) {
  return 1 - std::pow(1 - inclusion_probability, g);
}

SetFamily singletons_family(int g) {
  SetFamily f;
  f.ground = g;
  for (int e = 0; e < g; ++e) f.members.push_back({e});
  return f;
}

}  // namespace permdiv
