#include "permdiv.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "permdiv/counting.hpp"
#include "permdiv/family.hpp"
#include "permdiv/report.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int map_error(const permdiv::error& e) {
  using permdiv::errc;
  switch (e.code()) {
    case errc::internal_mismatch:
      return PERMDIV_INTERNAL_MISMATCH;
    case errc::io_error:
      return PERMDIV_RUNTIME_ERROR;
    default:
      return PERMDIV_CONFIG_ERROR;
  }
}

// Runs the body, captures exceptions into the thread-local message.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const permdiv::error& e) {
    g_last_error = e.what();
    return map_error(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PERMDIV_RUNTIME_ERROR;
  }
}

int emit_report(const permdiv::ReportResult& res, char** report) {
  if (report) *report = dup_string(res.text);
  return static_cast<int>(res.status);
}

}  // namespace

struct permdiv_family {
  permdiv::PermFamily impl;
};

extern "C" {

const char* permdiv_version(void) { return permdiv::kToolVersion; }

const char* permdiv_last_error(void) { return g_last_error.c_str(); }

void permdiv_free_string(char* s) { std::free(s); }

int permdiv_family_build(const char* literal, permdiv_family** out) {
  if (!literal || !out) return PERMDIV_CONFIG_ERROR;
  return guarded([&] {
    *out = new permdiv_family{permdiv::build_family_literal(literal)};
    return PERMDIV_OK;
  });
}

void permdiv_family_free(permdiv_family* f) { delete f; }

int permdiv_family_n(const permdiv_family* f) { return f ? f->impl.n() : 0; }

uint64_t permdiv_family_size(const permdiv_family* f) { return f ? f->impl.size() : 0; }

int permdiv_family_neighborhood(const permdiv_family* g, permdiv_family** out) {
  if (!g || !out) return PERMDIV_CONFIG_ERROR;
  return guarded([&] {
    *out = new permdiv_family{permdiv::neighborhood(g->impl)};
    return PERMDIV_OK;
  });
}

int permdiv_family_is_intersecting(const permdiv_family* f, int* out) {
  if (!f || !out) return PERMDIV_CONFIG_ERROR;
  return guarded([&] {
    *out = permdiv::is_intersecting(f->impl) ? 1 : 0;
    return PERMDIV_OK;
  });
}

int permdiv_family_stats_get(const permdiv_family* f, permdiv_family_stats* out, char** common_intersection) {
  if (!f || !out) return PERMDIV_CONFIG_ERROR;
  return guarded([&] {
    permdiv::FamilyStats st = permdiv::stats(f->impl);
    out->size = st.size;
    out->max_degree = st.max_degree;
    out->max_degree_row = st.max_degree_point.row;
    out->max_degree_col = st.max_degree_point.col;
    out->diversity = st.diversity;
    out->common_intersection_full_ground = st.common_intersection_is_full_ground ? 1 : 0;
    if (common_intersection) *common_intersection = dup_string(st.common_intersection.to_string());
    return PERMDIV_OK;
  });
}

int permdiv_family_isomorphic(const permdiv_family* f, const permdiv_family* g, int* iso, char** pi_out,
                              char** rho_out) {
  if (!f || !g || !iso) return PERMDIV_CONFIG_ERROR;
  return guarded([&] {
    auto witness = permdiv::are_isomorphic(f->impl, g->impl);
    *iso = witness.has_value() ? 1 : 0;
    if (witness) {
      if (pi_out) *pi_out = dup_string(witness->first.to_string());
      if (rho_out) *rho_out = dup_string(witness->second.to_string());
    }
    return PERMDIV_OK;
  });
}

int permdiv_family_save(const permdiv_family* f, const char* path, int binary) {
  if (!f || !path) return PERMDIV_CONFIG_ERROR;
  return guarded([&] {
    permdiv::family_save(f->impl, path, binary != 0);
    return PERMDIV_OK;
  });
}

int permdiv_family_format(const permdiv_family* f, char** out) {
  if (!f || !out) return PERMDIV_CONFIG_ERROR;
  return guarded([&] {
    *out = dup_string(permdiv::family_to_text(f->impl));
    return PERMDIV_OK;
  });
}

int permdiv_derangement_number(int n, char** out) {
  if (!out) return PERMDIV_CONFIG_ERROR;
  return guarded([&] {
    *out = dup_string(permdiv::derangement_number(n).str());
    return PERMDIV_OK;
  });
}

int permdiv_menage_number(int n, char** out) {
  if (!out) return PERMDIV_CONFIG_ERROR;
  return guarded([&] {
    *out = dup_string(permdiv::menage_number(n).str());
    return PERMDIV_OK;
  });
}

int permdiv_size_N_H(int n, int k, char** out) {
  if (!out) return PERMDIV_CONFIG_ERROR;
  return guarded([&] {
    *out = dup_string(permdiv::size_N_H(n, k).str());
    return PERMDIV_OK;
  });
}

int permdiv_size_E(int n, int k, char** out) {
  if (!out) return PERMDIV_CONFIG_ERROR;
  return guarded([&] {
    *out = dup_string(permdiv::size_E(n, k).str());
    return PERMDIV_OK;
  });
}

int permdiv_permanent01(const uint8_t* row_major, int dim, char** out) {
  if (!row_major || !out || dim < 0) return PERMDIV_CONFIG_ERROR;
  return guarded([&] {
    std::vector<std::uint8_t> m(row_major, row_major + static_cast<size_t>(dim) * static_cast<size_t>(dim));
    *out = dup_string(permdiv::permanent01(m, dim).str());
    return PERMDIV_OK;
  });
}

int permdiv_double_avoid_count(int n, const char* sigma, const char* pi, int x1, int y1, int x2, int y2,
                               char** out) {
  if (!sigma || !pi || !out) return PERMDIV_CONFIG_ERROR;
  return guarded([&] {
    auto s = permdiv::PartialPermutation::parse(n, sigma);
    auto p = permdiv::PartialPermutation::parse(n, pi);
    *out = dup_string(
        permdiv::double_avoid_count(n, s, p, permdiv::Point{x1, y1}, permdiv::Point{x2, y2}).str());
    return PERMDIV_OK;
  });
}

int permdiv_hitting_weighted_count(int n, int t, int i, char** out) {
  if (!out) return PERMDIV_CONFIG_ERROR;
  return guarded([&] {
    *out = dup_string(permdiv::hitting_weighted_count(n, t, i).str());
    return PERMDIV_OK;
  });
}

int permdiv_asymptotic_estimate(int n, int k, int which, char** exact_out, double* relative_error) {
  return guarded([&] {
    permdiv::EstimateReport rep = permdiv::asymptotic_estimate(n, k, which);
    if (exact_out) *exact_out = dup_string(rep.exact.str());
    if (relative_error) *relative_error = rep.relative_error.convert_to<double>();
    return PERMDIV_OK;
  });
}

int permdiv_report_count(const permdiv_count_options* options, char** report) {
  if (!options) return PERMDIV_CONFIG_ERROR;
  return guarded([&] {
    permdiv::CountOptions opts;
    opts.n_lo = options->n_lo;
    opts.n_hi = options->n_hi;
    opts.k = options->k;
    opts.all_k = options->all_k != 0;
    opts.json = options->json != 0;
    if (options->enum_cap > 0) opts.enum_cap = options->enum_cap;
    if (options->threads > 0) opts.threads = options->threads;
    opts.inject_mismatch = options->inject_mismatch != 0;
    return emit_report(permdiv::report_count(opts), report);
  });
}

int permdiv_report_verify(const permdiv_verify_options* options, char** report) {
  if (!options) return PERMDIV_CONFIG_ERROR;
  return guarded([&] {
    permdiv::VerifyReportOptions opts;
    if (options->n_cap > 0) opts.verify.n_cap = options->n_cap;
    if (options->t_cap > 0) opts.verify.t_cap = options->t_cap;
    if (options->module) opts.verify.module = options->module;
    opts.verify.inject_fault = options->inject_fault != 0;
    if (options->seed) opts.verify.seed = options->seed;
    opts.json = options->json != 0;
    return emit_report(permdiv::report_verify(opts), report);
  });
}

int permdiv_report_hitting(const permdiv_hitting_options* options, char** report) {
  if (!options || !options->source) return PERMDIV_CONFIG_ERROR;
  return guarded([&] {
    permdiv::HittingOptions opts;
    opts.source = options->source;
    opts.t = options->t;
    opts.max_size = options->max_size;
    opts.restrict_window = options->restrict_window != 0;
    opts.quotient = options->quotient != 0;
    return emit_report(permdiv::report_hitting(opts), report);
  });
}

int permdiv_report_spread_decompose(const permdiv_spread_decompose_options* options, char** report) {
  if (!options || !options->family || !options->tau) return PERMDIV_CONFIG_ERROR;
  return guarded([&] {
    permdiv::SpreadDecomposeOptions opts;
    opts.family = options->family;
    opts.tau = options->tau;
    opts.q = options->q;
    if (options->ambient_base) opts.ambient_base = options->ambient_base;
    if (options->preset) opts.preset = options->preset;
    return emit_report(permdiv::report_spread_decompose(opts), report);
  });
}

int permdiv_report_spread_mc(const permdiv_spread_mc_options* options, char** report) {
  if (!options || !options->preset) return PERMDIV_CONFIG_ERROR;
  return guarded([&] {
    permdiv::SpreadMcOptions opts;
    opts.preset = options->preset;
    opts.g = options->g;
    if (options->r) opts.r = options->r;
    opts.m = options->m;
    opts.delta = options->delta;
    opts.trials = options->trials;
    opts.seed = options->seed;
    opts.multi_round = options->multi_round != 0;
    opts.clamp = options->clamp != 0;
    opts.json = options->json != 0;
    return emit_report(permdiv::report_spread_mc(opts), report);
  });
}

int permdiv_report_search(const permdiv_search_options* options, char** report) {
  if (!options) return PERMDIV_CONFIG_ERROR;
  return guarded([&] {
    permdiv::SearchOptions opts;
    opts.n = options->n;
    opts.gamma0 = options->gamma0;
    opts.budget = options->budget;
    opts.json = options->json != 0;
    return emit_report(permdiv::report_search(opts), report);
  });
}

}  // extern "C"
