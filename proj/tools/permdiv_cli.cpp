// Command-line front door over the permdiv C API. Subcommands:
//   count, construct, verify, hitting, spread decompose, spread mc, search
// Exit codes: 0 ok, 1 invariant failure, 2 config error, 3 internal mismatch.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "permdiv.h"

namespace {

int g_threads = 1;

void read_thread_env() {
  if (const char* env = std::getenv("PERMDIV_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) g_threads = v;
  }
}

// Prints the report (if any) and translates the status into an exit code.
int finish(int status, char* report) {
  if (report) {
    std::fputs(report, stdout);
    permdiv_free_string(report);
  }
  if (status != PERMDIV_OK && status != PERMDIV_INVARIANT_FAILURE && status != PERMDIV_INTERNAL_MISMATCH) {
    std::fprintf(stderr, "permdiv: %s\n", permdiv_last_error());
  }
  if (status == PERMDIV_RUNTIME_ERROR) return 2;
  return status;
}

bool parse_range(const std::string& text, int& lo, int& hi) {
  size_t dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stoi(text);
    } else {
      lo = std::stoi(text.substr(0, dots));
      hi = std::stoi(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    return false;
  }
  return lo <= hi;
}

}  // namespace

int main(int argc, char** argv) {
  read_thread_env();
  CLI::App app{std::string("permdiv ") + permdiv_version() +
               " — exact verification of extremal intersecting permutation families"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "emit JSON instead of TSV");
  app.add_option("--threads", g_threads, "worker pool size (also PERMDIV_THREADS)");

  // count
  auto* count = app.add_subcommand("count", "closed-form count tables with enumeration cross-checks");
  std::string count_n = "4..7";
  int count_k = 0;
  bool all_k = false;
  int enum_cap = 7;
  bool inject_mismatch = false;
  count->add_option("--n", count_n, "ground size or range, e.g. 6 or 4..7");
  count->add_option("--k", count_k, "tail parameter");
  count->add_flag("--all-k", all_k, "every k in [2, n-2]");
  count->add_option("--enum-cap", enum_cap, "largest n to cross-check by enumeration");
  count->add_flag("--inject-mismatch", inject_mismatch)->group("");  // test hook

  // construct
  auto* construct = app.add_subcommand("construct", "build a family and write it to a file");
  std::string construct_family, construct_out;
  bool construct_binary = false;
  construct->add_option("--family", construct_family, "family literal (H:n:k, E:n:k, star:n:r:c, sigma:n, file:path)")
      ->required();
  construct->add_option("--out", construct_out, "output path")->required();
  construct->add_flag("--binary", construct_binary, "write the rank-list binary format");

  // verify
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  int verify_n_cap = 6, verify_t_cap = 5;
  std::string verify_module;
  bool inject_fault = false;
  std::uint64_t verify_seed = 1;
  verify->add_option("--n-cap", verify_n_cap, "largest ground size for enumeration checks");
  verify->add_option("--t", verify_t_cap, "largest t for hitting-set oracles");
  verify->add_option("--module", verify_module, "perm|family|counting|hitting|spread|extremal");
  verify->add_option("--seed", verify_seed, "seed for randomized checks");
  verify->add_flag("--inject-fault", inject_fault)->group("");  // test hook

  // hitting
  auto* hitting = app.add_subcommand("hitting", "minimal hitting sets of a family of partial permutations");
  std::string hitting_source;
  int hitting_t = 0, hitting_max = 0;
  bool hitting_restrict = false, hitting_quotient = false;
  hitting->add_option("--family", hitting_source, "family literal, file:path, or plist:path (partial permutations)")->required();
  hitting->add_option("--t", hitting_t, "window parameter; members live in [2,t]^2")->required();
  hitting->add_option("--max-size", hitting_max, "largest hitting-set size (default t-1)");
  hitting->add_flag("--restrict", hitting_restrict, "drop member points outside [2,t]^2");
  hitting->add_flag("--quotient", hitting_quotient, "peel off the common intersection first");

  // spread
  auto* spread = app.add_subcommand("spread", "spread decomposition and cover-probability trials");
  spread->require_subcommand(1);
  auto* decompose = spread->add_subcommand("decompose", "peel a family into covers plus a small residual");
  std::string dec_family, dec_tau = "3/2", dec_base;
  int dec_q = 3;
  decompose->add_option("--family", dec_family, "family literal")->required();
  decompose->add_option("--tau", dec_tau, "exact rational > 1, e.g. 3/2");
  decompose->add_option("--q", dec_q, "largest cover size");
  decompose->add_option("--ambient-base", dec_base, "fix the ambient space to permutations containing this fragment");

  auto* mc = spread->add_subcommand("mc", "Monte-Carlo cover-probability trial");
  std::string mc_preset = "singletons", mc_r;
  int mc_g = 64;
  double mc_m = 7, mc_delta = 1.0 / 14;
  std::uint64_t mc_trials = 20000, mc_seed = 42;
  bool mc_multi = false, mc_clamp = false;
  mc->add_option("--preset", mc_preset, "singletons or a family literal");
  mc->add_option("--g", mc_g, "ground size for the singletons preset");
  mc->add_option("--r", mc_r, "spreadness parameter (default g for singletons)");
  mc->add_option("--m", mc_m, "exponent parameter");
  mc->add_option("--delta", mc_delta, "per-round inclusion probability");
  mc->add_option("--trials", mc_trials, "number of trials");
  mc->add_option("--seed", mc_seed, "RNG seed");
  mc->add_flag("--multi-round", mc_multi, "sample W as a union of round(m) delta-subsets");
  mc->add_flag("--clamp", mc_clamp, "allow m*delta > 1 by clamping to 1");

  // search
  auto* search = app.add_subcommand("search", "exact extremal search at tiny n");
  int search_n = 4;
  std::int64_t search_gamma0 = -1;
  std::uint64_t search_budget = 0;
  search->add_option("--n", search_n, "ground size (3..5)");
  search->add_option("--gamma0", search_gamma0, "single diversity threshold (default: full frontier)");
  search->add_option("--budget", search_budget, "node budget; exceeded runs are flagged inexact");

  CLI11_PARSE(app, argc, argv);

  if (count->parsed()) {
    permdiv_count_options opts{};
    if (!parse_range(count_n, opts.n_lo, opts.n_hi)) {
      std::fprintf(stderr, "permdiv: bad --n range '%s'\n", count_n.c_str());
      return 2;
    }
    opts.k = count_k;
    opts.all_k = all_k ? 1 : 0;
    if (!all_k && count_k == 0) opts.all_k = 1;
    opts.json = json ? 1 : 0;
    opts.enum_cap = enum_cap;
    opts.threads = g_threads;
    opts.inject_mismatch = inject_mismatch ? 1 : 0;
    char* report = nullptr;
    int status = permdiv_report_count(&opts, &report);
    return finish(status, report);
  }

  if (construct->parsed()) {
    permdiv_family* family = nullptr;
    int status = permdiv_family_build(construct_family.c_str(), &family);
    if (status != PERMDIV_OK) return finish(status, nullptr);
    status = permdiv_family_save(family, construct_out.c_str(), construct_binary ? 1 : 0);
    if (status == PERMDIV_OK) {
      std::printf("# permdiv %s\nwrote %s (n=%d, size=%llu, %s)\n", permdiv_version(), construct_out.c_str(),
                  permdiv_family_n(family), static_cast<unsigned long long>(permdiv_family_size(family)),
                  construct_binary ? "binary" : "text");
    }
    permdiv_family_free(family);
    return finish(status, nullptr);
  }

  if (verify->parsed()) {
    permdiv_verify_options opts{};
    opts.n_cap = verify_n_cap;
    opts.t_cap = verify_t_cap;
    opts.module = verify_module.empty() ? nullptr : verify_module.c_str();
    opts.inject_fault = inject_fault ? 1 : 0;
    opts.seed = verify_seed;
    opts.json = json ? 1 : 0;
    char* report = nullptr;
    int status = permdiv_report_verify(&opts, &report);
    return finish(status, report);
  }

  if (hitting->parsed()) {
    permdiv_hitting_options opts{};
    opts.source = hitting_source.c_str();
    opts.t = hitting_t;
    opts.max_size = hitting_max;
    opts.restrict_window = hitting_restrict ? 1 : 0;
    opts.quotient = hitting_quotient ? 1 : 0;
    char* report = nullptr;
    int status = permdiv_report_hitting(&opts, &report);
    return finish(status, report);
  }

  if (decompose->parsed()) {
    permdiv_spread_decompose_options opts{};
    opts.family = dec_family.c_str();
    opts.tau = dec_tau.c_str();
    opts.q = dec_q;
    opts.ambient_base = dec_base.empty() ? nullptr : dec_base.c_str();
    char* report = nullptr;
    int status = permdiv_report_spread_decompose(&opts, &report);
    return finish(status, report);
  }

  if (mc->parsed()) {
    permdiv_spread_mc_options opts{};
    opts.preset = mc_preset.c_str();
    opts.g = mc_g;
    opts.r = mc_r.empty() ? nullptr : mc_r.c_str();
    opts.m = mc_m;
    opts.delta = mc_delta;
    opts.trials = mc_trials;
    opts.seed = mc_seed;
    opts.multi_round = mc_multi ? 1 : 0;
    opts.clamp = mc_clamp ? 1 : 0;
    opts.json = json ? 1 : 0;
    char* report = nullptr;
    int status = permdiv_report_spread_mc(&opts, &report);
    return finish(status, report);
  }

  if (search->parsed()) {
    permdiv_search_options opts{};
    opts.n = search_n;
    opts.gamma0 = search_gamma0;
    opts.budget = search_budget;
    opts.json = json ? 1 : 0;
    char* report = nullptr;
    int status = permdiv_report_search(&opts, &report);
    return finish(status, report);
  }

  return 2;
}
