/*
 * permdiv — exact combinatorics of intersecting permutation families.
 *
 * C interface over the C++ core: opaque handles, integer status codes, and
 * decimal strings for exact big-integer values. Every char** output is
 * allocated by the library and must be released with permdiv_free_string().
 */
#ifndef PERMDIV_H
#define PERMDIV_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; the CLI uses them directly as exit codes. */
#define PERMDIV_OK 0
#define PERMDIV_INVARIANT_FAILURE 1
#define PERMDIV_CONFIG_ERROR 2
#define PERMDIV_INTERNAL_MISMATCH 3
#define PERMDIV_RUNTIME_ERROR 4

const char* permdiv_version(void);

/* Message for the most recent failing call on this thread. */
const char* permdiv_last_error(void);

void permdiv_free_string(char* s);

/* ------------------------------------------------------------------ */
/* Families                                                            */
/* ------------------------------------------------------------------ */

typedef struct permdiv_family permdiv_family;

/* Literals: "H:n:k", "E:n:k", "star:n:r:c", "sigma:n", "file:path". */
int permdiv_family_build(const char* literal, permdiv_family** out);
void permdiv_family_free(permdiv_family* f);

int permdiv_family_n(const permdiv_family* f);
uint64_t permdiv_family_size(const permdiv_family* f);

/* Permutations fixing (1,1) that intersect every member of g. */
int permdiv_family_neighborhood(const permdiv_family* g, permdiv_family** out);

int permdiv_family_is_intersecting(const permdiv_family* f, int* out);

typedef struct permdiv_family_stats {
  uint64_t size;
  uint64_t max_degree;
  int max_degree_row;
  int max_degree_col;
  uint64_t diversity;
  int common_intersection_full_ground;
} permdiv_family_stats;

/* common_intersection receives the "r->c,r->c" text form (may be empty). */
int permdiv_family_stats_get(const permdiv_family* f, permdiv_family_stats* out, char** common_intersection);

/* Witnesses are one-line images ("2 1 3 4"); *iso is 0/1. */
int permdiv_family_isomorphic(const permdiv_family* f, const permdiv_family* g, int* iso, char** pi_out,
                              char** rho_out);

int permdiv_family_save(const permdiv_family* f, const char* path, int binary);
int permdiv_family_format(const permdiv_family* f, char** out);

/* ------------------------------------------------------------------ */
/* Exact counts (decimal strings)                                      */
/* ------------------------------------------------------------------ */

int permdiv_derangement_number(int n, char** out);
int permdiv_menage_number(int n, char** out);
int permdiv_size_N_H(int n, int k, char** out);
int permdiv_size_E(int n, int k, char** out);

/* row_major: dim*dim entries in {0,1}; dim <= 24. */
int permdiv_permanent01(const uint8_t* row_major, int dim, char** out);

/* sigma/pi in "r->c,r->c" text form over [n]^2. */
int permdiv_double_avoid_count(int n, const char* sigma, const char* pi, int x1, int y1, int x2, int y2,
                               char** out);

int permdiv_hitting_weighted_count(int n, int t, int i, char** out);

/* which=1: (n-2)!(n-k); which=2: (n-1)!(1 - e^{-1}(1+1/n)^{k-1}).
 * exact_out gets the exact |N(H_k)|; relative_error the float comparison. */
int permdiv_asymptotic_estimate(int n, int k, int which, char** exact_out, double* relative_error);

/* ------------------------------------------------------------------ */
/* Command-level reports (the CLI is a thin wrapper over these)        */
/* ------------------------------------------------------------------ */

typedef struct permdiv_count_options {
  int n_lo, n_hi;
  int k;      /* ignored when all_k != 0 */
  int all_k;
  int json;
  int enum_cap; /* 0 = default 7 */
  int threads;  /* 0 = 1 */
  int inject_mismatch; /* test hook for the exit-code contract */
} permdiv_count_options;

int permdiv_report_count(const permdiv_count_options* options, char** report);

typedef struct permdiv_verify_options {
  int n_cap;  /* 0 = default 6 */
  int t_cap;  /* 0 = default 5 */
  const char* module; /* NULL = all */
  int inject_fault;
  uint64_t seed;
  int json;
} permdiv_verify_options;

int permdiv_report_verify(const permdiv_verify_options* options, char** report);

typedef struct permdiv_hitting_options {
  const char* source; /* family literal, "file:path", or "plist:path" */
  int t;
  int max_size;       /* 0 = t-1 */
  int restrict_window;
  int quotient;
} permdiv_hitting_options;

int permdiv_report_hitting(const permdiv_hitting_options* options, char** report);

typedef struct permdiv_spread_decompose_options {
  const char* family;
  const char* tau;          /* "p/q" */
  int q;
  const char* ambient_base; /* NULL or "r->c,..." */
  const char* preset;       /* NULL, "role1", or "role2:<k>:<t>" */
} permdiv_spread_decompose_options;

int permdiv_report_spread_decompose(const permdiv_spread_decompose_options* options, char** report);

typedef struct permdiv_spread_mc_options {
  const char* preset; /* "singletons" or a family literal */
  int g;
  const char* r;      /* NULL = g for singletons, 1 otherwise */
  double m;
  double delta;
  uint64_t trials;
  uint64_t seed;
  int multi_round;
  int clamp;
  int json;
} permdiv_spread_mc_options;

int permdiv_report_spread_mc(const permdiv_spread_mc_options* options, char** report);

typedef struct permdiv_search_options {
  int n;
  int64_t gamma0;   /* -1 = full frontier */
  uint64_t budget;  /* 0 = default */
  int json;
} permdiv_search_options;

int permdiv_report_search(const permdiv_search_options* options, char** report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PERMDIV_H */
