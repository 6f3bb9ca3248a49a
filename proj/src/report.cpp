#include "permdiv/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "permdiv/counting.hpp"
#include "permdiv/extremal.hpp"
#include "permdiv/hitting.hpp"
#include "permdiv/spread.hpp"

namespace permdiv {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string fmt_real(const Real& v) {
  std::ostringstream os;
  os.precision(20);
  os << v;
  return os.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find(sep, pos);
    if (end == std::string::npos) end = text.size();
    parts.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return parts;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(errc::parse_error, "bad " + what + " '" + s + "'");
  }
}

ordered_json points_json(const PartialPermutation& p) {
  ordered_json arr = ordered_json::array();
  for (const Point& q : p.points()) arr.push_back({q.row, q.col});
  return arr;
}

}  // namespace

PermFamily build_family_literal(const std::string& literal) {
  auto parts = split(literal, ':');
  if (parts.empty()) fail(errc::parse_error, "empty family literal");
  const std::string& kind = parts[0];
  if (kind == "file") {
    if (parts.size() != 2) fail(errc::parse_error, "expected file:<path>");
    return family_load(parts[1]);
  }
  if (kind == "H" || kind == "E") {
    if (parts.size() != 3) fail(errc::parse_error, "expected " + kind + ":<n>:<k>");
    int n = parse_int(parts[1], "n"), k = parse_int(parts[2], "k");
    return kind == "H" ? build_H(n, k) : build_E(n, k);
  }
  if (kind == "star") {
    if (parts.size() != 4) fail(errc::parse_error, "expected star:<n>:<r>:<c>");
    return star_family(parse_int(parts[1], "n"), parse_int(parts[2], "r"), parse_int(parts[3], "c"));
  }
  if (kind == "sigma") {
    if (parts.size() != 2) fail(errc::parse_error, "expected sigma:<n>");
    return PermFamily::full(parse_int(parts[1], "n"));
  }
  fail(errc::parse_error, "unknown family literal '" + literal + "'");
}

ReportResult report_count(const CountOptions& options) {
  if (options.n_lo < 4 || options.n_hi < options.n_lo)
    fail(errc::out_of_range, "count needs 4 <= n_lo <= n_hi");
  if (!options.all_k) {
    for (int n = options.n_lo; n <= options.n_hi; ++n)
      if (!(2 <= options.k && options.k <= n - 2))
        fail(errc::out_of_range, "k=" + std::to_string(options.k) + " outside [2, n-2] for n=" + std::to_string(n));
  }

  struct Row {
    int n, k;
    ExactCount d, u, h, nh_deg, nh_ie, e;
    bool enumerated = false;
    ExactCount enum_nh, enum_e;
    bool match = true;
    std::string relerr1, relerr2;
  };
  std::vector<Row> rows;
  bool mismatch = false;
  std::string mismatch_detail;
  for (int n = options.n_lo; n <= options.n_hi; ++n) {
    std::vector<int> ks;
    if (options.all_k)
      for (int k = 2; k <= n - 2; ++k) ks.push_back(k);
    else
      ks.push_back(options.k);
    for (int k : ks) {
      Row row;
      row.n = n;
      row.k = k;
      row.d = derangement_number(n);
      row.u = menage_number(n);
      row.h = factorial(k) - factorial(k - 1);
      row.nh_deg = size_N_H_via_degree_sum(n, k);
      row.nh_ie = size_N_H_via_inclusion_exclusion(n, k);
      if (options.inject_mismatch) row.nh_ie += 1;
      if (row.nh_deg != row.nh_ie) {
        mismatch = true;
        mismatch_detail = "evaluators disagree at n=" + std::to_string(n) + " k=" + std::to_string(k) +
                          (options.inject_mismatch ? " (injected)" : "");
      }
      row.e = row.nh_deg + row.h;
      if (n <= options.enum_cap && n <= kMaxFamilyN) {
        row.enumerated = true;
        PermFamily h = build_H(n, k);
        PermFamily nh = neighborhood(h, options.threads);
        row.enum_nh = nh.size();
        row.enum_e = h.united(nh).size();
        row.match = row.enum_nh == row.nh_deg && row.enum_e == row.e &&
                    ExactCount(h.size()) == row.h;
        if (!row.match) {
          mismatch = true;
          mismatch_detail = "formula vs enumeration at n=" + std::to_string(n) + " k=" + std::to_string(k);
        }
      }
      row.relerr1 = fmt_real(asymptotic_estimate(n, k, 1).relative_error);
      row.relerr2 = fmt_real(asymptotic_estimate(n, k, 2).relative_error);
      rows.push_back(std::move(row));
    }
  }

  std::string config = "command=count n=" + std::to_string(options.n_lo) + ".." + std::to_string(options.n_hi) +
                       (options.all_k ? " k=all" : " k=" + std::to_string(options.k)) +
                       " enum_cap=" + std::to_string(options.enum_cap) +
                       " threads=" + std::to_string(options.threads);
  ReportResult res;
  if (options.json) {
    ordered_json j;
    j["version"] = kToolVersion;
    j["config"] = config;
    j["rows"] = ordered_json::array();
    for (const Row& r : rows) {
      ordered_json jr;
      jr["n"] = r.n;
      jr["k"] = r.k;
      jr["d_n"] = r.d.str();
      jr["menage_n"] = r.u.str();
      jr["H"] = r.h.str();
      jr["N_H_degree_sum"] = r.nh_deg.str();
      jr["N_H_inclusion_exclusion"] = r.nh_ie.str();
      jr["E"] = r.e.str();
      if (r.enumerated) {
        jr["N_H_enumerated"] = r.enum_nh.str();
        jr["E_enumerated"] = r.enum_e.str();
        jr["match"] = r.match;
      }
      jr["eq4_rel_err"] = r.relerr1;
      jr["eq5_rel_err"] = r.relerr2;
      jr["provenance"] = r.enumerated ? "formula+enumeration" : "formula";
      j["rows"].push_back(std::move(jr));
    }
    if (mismatch) j["mismatch"] = mismatch_detail;
    res.text = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "# permdiv " << kToolVersion << "\n# config: " << config << "\n";
    os << "n\tk\td_n\tmenage_n\tH\tN_H_degree_sum\tN_H_inclusion_exclusion\tE\tN_H_enumerated\tE_enumerated\tmatch\teq4_rel_err\teq5_rel_err\tprovenance\n";
    for (const Row& r : rows) {
      os << r.n << '\t' << r.k << '\t' << r.d << '\t' << r.u << '\t' << r.h << '\t' << r.nh_deg << '\t' << r.nh_ie
         << '\t' << r.e << '\t';
      if (r.enumerated)
        os << r.enum_nh << '\t' << r.enum_e << '\t' << (r.match ? "yes" : "NO");
      else
        os << "-\t-\t-";
      os << '\t' << r.relerr1 << '\t' << r.relerr2 << '\t'
         << (r.enumerated ? "formula+enumeration" : "formula") << '\n';
    }
    if (mismatch) os << "# MISMATCH: " << mismatch_detail << '\n';
    res.text = os.str();
  }
  res.status = mismatch ? ReportStatus::internal_mismatch : ReportStatus::ok;
  return res;
}

ReportResult report_verify(const VerifyReportOptions& options) {
  VerifyResult vr = run_verify(options.verify);
  std::string config = "command=verify n_cap=" + std::to_string(options.verify.n_cap) +
                       " t_cap=" + std::to_string(options.verify.t_cap) +
                       " module=" + (options.verify.module.empty() ? "all" : options.verify.module) +
                       " seed=" + std::to_string(options.verify.seed) +
                       (options.verify.inject_fault ? " inject_fault=1" : "");
  ReportResult res;
  res.status = vr.passed ? ReportStatus::ok : ReportStatus::invariant_failure;
  if (options.json) {
    ordered_json j;
    j["version"] = kToolVersion;
    j["config"] = config;
    j["passed"] = vr.passed;
    j["checks"] = ordered_json::array();
    for (const CheckLine& c : vr.checks) {
      ordered_json jc;
      jc["name"] = c.name;
      jc["status"] = c.note_only ? "note" : (c.ok ? "ok" : "FAIL");
      if (!c.detail.empty()) jc["detail"] = c.detail;
      j["checks"].push_back(std::move(jc));
    }
    res.text = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "# permdiv " << kToolVersion << "\n# config: " << config << "\n";
    for (const CheckLine& c : vr.checks) {
      os << (c.note_only ? "note" : (c.ok ? "ok  " : "FAIL")) << ' ' << c.name;
      if (!c.detail.empty()) os << " — " << c.detail;
      os << '\n';
    }
    os << (vr.passed ? "all checks passed" : "CHECKS FAILED") << '\n';
    res.text = os.str();
  }
  return res;
}

namespace {

std::vector<PartialPermutation> hitting_input(const HittingOptions& options) {
  std::vector<PartialPermutation> family;
  if (options.source.rfind("plist:", 0) == 0) {
    // Plain list of partial permutations: "n=<n>" then one "r->c,..." per line.
    std::ifstream is(options.source.substr(6));
    if (!is) fail(errc::io_error, "cannot open " + options.source.substr(6));
    std::string line;
    if (!std::getline(is, line) || line.rfind("n=", 0) != 0) fail(errc::parse_error, "expected leading n=<n> line");
    int n = parse_int(line.substr(2), "n");
    while (std::getline(is, line)) family.push_back(PartialPermutation::parse(n, line));
  } else {
    PermFamily f = build_family_literal(options.source);
    for (const Permutation& s : f.members()) family.push_back(s.as_points());
  }
  if (options.restrict_window) {
    std::vector<PartialPermutation> restricted;
    for (const auto& m : family) {
      std::vector<Point> kept;
      for (const Point& p : m.points())
        if (p.row >= 2 && p.row <= options.t && p.col >= 2 && p.col <= options.t) kept.push_back(p);
      restricted.push_back(PartialPermutation(m.n(), std::move(kept)));
    }
    family = std::move(restricted);
  }
  if (options.quotient && !family.empty()) {
    PartialPermutation common = family.front();
    for (const auto& m : family) {
      std::vector<Point> kept;
      for (const Point& p : common.points())
        if (m.contains(p)) kept.push_back(p);
      common = PartialPermutation(common.n(), std::move(kept));
    }
    for (auto& m : family) m = m.minus(common);
  }
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  return family;
}

}  // namespace

ReportResult report_hitting(const HittingOptions& options) {
  if (options.t < 3) fail(errc::out_of_range, "hitting needs t >= 3");
  std::vector<PartialPermutation> family = hitting_input(options);
  if (family.empty()) fail(errc::empty_input, "no members after preprocessing");
  const int max_size = options.max_size > 0 ? options.max_size : options.t - 1;

  HittingSetReport rep = minimal_hitting_sets(family, max_size);

  bool sizes_ok = true, window_ok = true;
  for (const auto& m : family) {
    if (m.size() > options.t - 2) sizes_ok = false;
    for (const Point& p : m.points())
      if (p.row < 2 || p.row > options.t || p.col < 2 || p.col > options.t) window_ok = false;
  }
  PartialPermutation common = family.front();
  for (const auto& m : family) {
    std::vector<Point> kept;
    for (const Point& p : common.points())
      if (m.contains(p)) kept.push_back(p);
    common = PartialPermutation(common.n(), std::move(kept));
  }

  ordered_json j;
  j["version"] = kToolVersion;
  j["config"] = "command=hitting source=" + options.source + " t=" + std::to_string(options.t) +
                " max_size=" + std::to_string(max_size) + (options.restrict_window ? " restrict=1" : "") +
                (options.quotient ? " quotient=1" : "");
  j["t"] = options.t;
  j["members"] = static_cast<std::uint64_t>(family.size());
  j["unhittable"] = rep.unhittable;
  ordered_json counts = ordered_json::object();
  ordered_json sets = ordered_json::array();
  for (const auto& [size, list] : rep.by_size) {
    counts[std::to_string(size)] = static_cast<std::uint64_t>(list.size());
    for (const auto& s : list) {
      ordered_json points = ordered_json::array();
      for (const Point& p : s) points.push_back({p.row, p.col});
      sets.push_back(std::move(points));
    }
  }
  j["counts"] = std::move(counts);
  ordered_json bounds = ordered_json::object();
  bool bound_holds = true;
  for (int i = 2; i <= options.t - 1; ++i) {
    std::uint64_t bound = 1;
    for (int e = 0; e < i; ++e) bound *= static_cast<std::uint64_t>(options.t - 2);
    bounds[std::to_string(i)] = bound;
    auto it = rep.by_size.find(i);
    std::uint64_t cnt = it == rep.by_size.end() ? 0 : it->second.size();
    if (cnt > bound) bound_holds = false;
  }
  j["bounds"] = std::move(bounds);
  j["sets"] = std::move(sets);
  j["bound_applicable"] = sizes_ok && window_ok;
  j["bound_holds"] = bound_holds;
  j["common_point_free"] = common.empty();
  ordered_json nodes = ordered_json::object();
  for (const auto& [depth, count] : rep.nodes_by_depth) nodes[std::to_string(depth)] = count;
  j["nodes_by_depth"] = std::move(nodes);

  return {ReportStatus::ok, j.dump(2) + "\n"};
}

ReportResult report_spread_decompose(const SpreadDecomposeOptions& options) {
  PermFamily f = build_family_literal(options.family);
  Rational tau = parse_rational(options.tau);
  int q = options.q;
  if (!options.preset.empty()) {
    const double log_n = std::log(static_cast<double>(f.n())) / std::log(1.01);
    if (options.preset == "role1") {
      tau = Rational(101, 100);
      q = static_cast<int>(std::ceil(10 * log_n));
    } else if (options.preset.rfind("role2:", 0) == 0) {
      auto parts = split(options.preset, ':');
      if (parts.size() != 3) fail(errc::parse_error, "expected role2:<k>:<t>");
      int k = parse_int(parts[1], "k"), t = parse_int(parts[2], "t");
      tau = Rational(k, static_cast<long long>(std::ceil(log_n)) * static_cast<long long>(std::ceil(log_n)));
      q = static_cast<int>(std::ceil(1.1 * (t - k)));
    } else {
      fail(errc::parse_error, "unknown preset '" + options.preset + "'");
    }
  }
  if (tau <= 1)
    fail(errc::out_of_range, "tau must exceed 1 (got " + rational_to_string(tau) +
                                 (options.preset.empty() ? "" : "; the '" + options.preset +
                                                                    "' preset degenerates at this ground size"));
  if (q < 0) fail(errc::out_of_range, "q must be nonnegative");
  PartialPermutation base(f.n(), {});
  if (!options.ambient_base.empty()) base = PartialPermutation::parse(f.n(), options.ambient_base);
  AmbientSpace ambient(f.n(), base);
  PointFamily pf = to_point_family(f);
  SpreadDecomposition dec = spread_approximate(pf, ambient, tau, q);
  DecompositionAudit audit = audit_decomposition(pf, ambient, dec);

  ordered_json j;
  j["version"] = kToolVersion;
  j["config"] = "command=spread-decompose family=" + options.family + " tau=" + rational_to_string(tau) +
                " q=" + std::to_string(q) +
                (options.preset.empty() ? "" : " preset=" + options.preset) +
                (options.ambient_base.empty() ? "" : " ambient_base=" + options.ambient_base);
  j["tau"] = rational_to_string(tau);
  j["q"] = q;
  ordered_json covers = ordered_json::array();
  for (const auto& part : dec.covers) {
    ordered_json jc;
    jc["S"] = points_json(part.cover);
    jc["size"] = static_cast<std::uint64_t>(part.members.size());
    covers.push_back(std::move(jc));
  }
  j["covers"] = std::move(covers);
  j["residual_size"] = static_cast<std::uint64_t>(dec.residual.size());
  j["residual_bound"] = rational_to_string(audit.residual_bound);
  j["homogeneity_verified"] = audit.homogeneity_ok;
  j["partition_exact"] = audit.partition_exact;
  j["covers_contained"] = audit.covers_contained;
  j["residual_bound_ok"] = audit.residual_bound_ok;
  if (dec.oversized_set) j["oversized_set"] = points_json(*dec.oversized_set);

  bool all_ok = audit.homogeneity_ok && audit.partition_exact && audit.covers_contained && audit.residual_bound_ok;
  return {all_ok ? ReportStatus::ok : ReportStatus::invariant_failure, j.dump(2) + "\n"};
}

ReportResult report_spread_mc(const SpreadMcOptions& options) {
  if (options.m <= 0 || options.delta <= 0) fail(errc::out_of_range, "m and delta must be positive");
  if (options.m * options.delta > 1 && !options.clamp)
    fail(errc::out_of_range, "m*delta exceeds 1; pass the clamp flag to proceed");

  SetFamily family;
  Rational r;
  bool singles = options.preset == "singletons";
  if (singles) {
    if (options.g < 1) fail(errc::out_of_range, "singletons preset needs g >= 1");
    family = singletons_family(options.g);
    r = options.r.empty() ? Rational(options.g) : parse_rational(options.r);
  } else {
    PermFamily f = build_family_literal(options.preset);
    family = to_set_family(to_point_family(f));
    r = options.r.empty() ? Rational(1) : parse_rational(options.r);
  }
  SpreadTrialResult trial =
      spread_lemma_trial(family, r, options.m, options.delta, options.trials, options.seed, options.multi_round);

  std::string config = "command=spread-mc preset=" + options.preset + " g=" + std::to_string(options.g) +
                       " r=" + rational_to_string(r) + " m=" + fmt_double(options.m) +
                       " delta=" + fmt_double(options.delta) + " trials=" + std::to_string(options.trials) +
                       " seed=" + std::to_string(options.seed) +
                       (options.multi_round ? " variant=multi-round" : " variant=independent");
  ReportResult res;
  double closed_form = singles ? singleton_cover_probability(options.g, trial.inclusion_probability) : -1;
  if (options.json) {
    ordered_json j;
    j["version"] = kToolVersion;
    j["config"] = config;
    j["seed"] = options.seed;
    j["provenance"] = "monte-carlo";
    j["empirical"] = fmt_double(trial.empirical);
    j["std_error"] = fmt_double(trial.std_error);
    j["bound"] = fmt_double(trial.bound);
    j["bound_positive"] = trial.bound_positive;
    j["inclusion_probability"] = fmt_double(trial.inclusion_probability);
    if (singles) j["closed_form"] = fmt_double(closed_form);
    res.text = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "# permdiv " << kToolVersion << "\n# config: " << config << "\n# provenance: monte-carlo\n";
    os << "empirical\tstd_error\tbound\tbound_positive\tclosed_form\n";
    os << fmt_double(trial.empirical) << '\t' << fmt_double(trial.std_error) << '\t' << fmt_double(trial.bound)
       << '\t' << (trial.bound_positive ? "yes" : "no") << '\t' << (singles ? fmt_double(closed_form) : "-")
       << '\n';
    res.text = os.str();
  }
  res.status = ReportStatus::ok;
  return res;
}

ReportResult report_search(const SearchOptions& options) {
  if (options.n < 3 || options.n > 5) fail(errc::out_of_range, "search needs 3 <= n <= 5");
  const std::uint64_t budget = options.budget ? options.budget : kDefaultSearchBudget;

  ExtremalReport rep;
  if (options.gamma0 >= 0) {
    rep.n = options.n;
    SearchOutcome outcome = max_intersecting(options.n, static_cast<std::uint64_t>(options.gamma0), budget);
    FrontierEntry entry;
    entry.gamma0 = static_cast<std::uint64_t>(options.gamma0);
    entry.max_size = outcome.best_size;
    entry.exact = outcome.exact;
    entry.witness_ranks = outcome.witness;
    PermFamily witness = family_from_ranks_list(options.n, outcome.witness);
    for (int k = 2; k <= options.n - 2; ++k) {
      if (size_E(options.n, k) != ExactCount(witness.size())) continue;
      if (are_isomorphic(witness, build_E(options.n, k))) {
        entry.isomorphic_to_E_k = k;
        break;
      }
    }
    rep.entries.push_back(std::move(entry));
  } else {
    rep = frontier(options.n, budget);
  }

  std::string config = "command=search n=" + std::to_string(options.n) +
                       (options.gamma0 >= 0 ? " gamma0=" + std::to_string(options.gamma0) : " gamma0=frontier") +
                       " budget=" + std::to_string(budget);
  auto witness_text = [&](const FrontierEntry& e) {
    std::string out;
    for (size_t i = 0; i < e.witness_ranks.size(); ++i) {
      if (i) out += ';';
      out += Permutation::unrank(options.n, e.witness_ranks[i]).to_string();
    }
    return out;
  };

  // Largest diversity threshold that still admits a family, against the
  // (n-2)! - (n-3)! bound known for large ground sizes; reported only.
  ExactCount diversity_bound = factorial(options.n - 2) - factorial(options.n - 3);
  std::string max_diversity = rep.entries.empty() || options.gamma0 >= 0
                                  ? "-"
                                  : std::to_string(rep.entries.back().gamma0) +
                                        (rep.entries.back().exact ? "" : "?");

  ReportResult res;
  if (options.json) {
    ordered_json j;
    j["version"] = kToolVersion;
    j["config"] = config;
    j["n"] = options.n;
    if (options.gamma0 < 0) {
      j["max_achievable_diversity"] = max_diversity;
      j["large_n_diversity_bound"] = diversity_bound.str();
    }
    j["entries"] = ordered_json::array();
    for (const auto& e : rep.entries) {
      ordered_json je;
      je["gamma0"] = e.gamma0;
      je["max_size"] = e.max_size;
      je["exact"] = e.exact;
      if (e.isomorphic_to_E_k)
        je["isomorphic_to_E_k"] = *e.isomorphic_to_E_k;
      else
        je["isomorphic_to_E_k"] = nullptr;
      ordered_json members = ordered_json::array();
      for (std::uint32_t r : e.witness_ranks) members.push_back(Permutation::unrank(options.n, r).to_string());
      je["witness"] = std::move(members);
      je["provenance"] = e.exact ? "enumeration" : "enumeration(budget-exceeded)";
      j["entries"].push_back(std::move(je));
    }
    res.text = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "# permdiv " << kToolVersion << "\n# config: " << config << "\n";
    if (options.gamma0 < 0)
      os << "# max achievable diversity: " << max_diversity << " (large-n bound (n-2)!-(n-3)! = "
         << diversity_bound << ")\n";
    os << "gamma0\tmax_size\texact\tisomorphic_to_E_k\twitness\n";
    for (const auto& e : rep.entries) {
      os << e.gamma0 << '\t' << e.max_size << '\t' << (e.exact ? "yes" : "no") << '\t';
      if (e.isomorphic_to_E_k)
        os << *e.isomorphic_to_E_k;
      else
        os << "-";
      os << '\t' << witness_text(e) << '\n';
    }
    res.text = os.str();
  }
  res.status = ReportStatus::ok;
  return res;
}

}  // namespace permdiv
