#pragma once

#include <cstdint>
#include <string>

#include "permdiv/family.hpp"
#include "permdiv/verify.hpp"

namespace permdiv {

inline constexpr const char* kToolVersion = "1.0.0";

// Status values double as CLI exit codes.
enum class ReportStatus : int {
  ok = 0,
  invariant_failure = 1,
  config_error = 2,
  internal_mismatch = 3,
};

struct ReportResult {
  ReportStatus status = ReportStatus::ok;
  std::string text;
};

// "H:n:k", "E:n:k", "star:n:r:c", "sigma:n", or "file:path".
PermFamily build_family_literal(const std::string& literal);

struct CountOptions {
  int n_lo = 0, n_hi = 0;
  int k = 0;          // ignored when all_k
  bool all_k = false;
  bool json = false;
  int enum_cap = 7;   // enumeration columns only up to this n
  int threads = 1;
  bool inject_mismatch = false;  // test hook for the exit-code contract
};
ReportResult report_count(const CountOptions& options);

struct VerifyReportOptions {
  VerifyOptions verify;
  bool json = false;
};
ReportResult report_verify(const VerifyReportOptions& options);

struct HittingOptions {
  std::string source;  // family literal, file:path, or plist:path
  int t = 0;
  int max_size = 0;           // 0 = t-1
  bool restrict_window = false;  // keep only points inside [2,t]^2
  bool quotient = false;         // peel off the common intersection first
};
ReportResult report_hitting(const HittingOptions& options);

struct SpreadDecomposeOptions {
  std::string family;
  std::string tau = "3/2";
  int q = 3;
  std::string ambient_base;  // partial permutation text; empty = full space
  // Named parameter presets overriding tau/q:
  //   "role1"        tau = 101/100, q = ceil(10 log_{1.01} n)
  //   "role2:<k>:<t>" tau = k / ceil(log_{1.01} n)^2, q = ceil(1.1 (t-k))
  // The second collapses to tau <= 1 at small n and is rejected; the engine
  // itself is parameter-generic.
  std::string preset;
};
ReportResult report_spread_decompose(const SpreadDecomposeOptions& options);

struct SpreadMcOptions {
  std::string preset = "singletons";  // or a family literal
  int g = 64;                         // singleton ground size
  std::string r;                      // empty = g for singletons, 1 otherwise
  double m = 7;
  double delta = 1.0 / 14;
  std::uint64_t trials = 20000;
  std::uint64_t seed = 42;
  bool multi_round = false;
  bool clamp = false;  // allow m*delta > 1 by clamping
  bool json = false;
};
ReportResult report_spread_mc(const SpreadMcOptions& options);

struct SearchOptions {
  int n = 4;
  std::int64_t gamma0 = -1;  // -1 = full frontier
  std::uint64_t budget = 0;  // 0 = default
  bool json = false;
};
ReportResult report_search(const SearchOptions& options);

}  // namespace permdiv
