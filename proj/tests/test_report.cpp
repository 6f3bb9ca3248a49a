#include "doctest.h"
#include "json.hpp"
#include "permdiv/counting.hpp"
#include "permdiv/report.hpp"

using namespace permdiv;

TEST_CASE("family literals") {
  CHECK(build_family_literal("H:5:3").size() == 4);
  CHECK(build_family_literal("E:5:2").size() == 14);
  CHECK(build_family_literal("star:4:1:1").size() == 6);
  CHECK(build_family_literal("sigma:4").size() == 24);
  CHECK_THROWS_AS(build_family_literal("H:5"), error);
  CHECK_THROWS_AS(build_family_literal("bogus:1:2"), error);
  CHECK_THROWS_AS(build_family_literal("H:5:9"), error);
}

TEST_CASE("count report") {
  CountOptions opts;
  opts.n_lo = 4;
  opts.n_hi = 5;
  opts.all_k = true;
  ReportResult res = report_count(opts);
  CHECK(res.status == ReportStatus::ok);
  CHECK(res.text.find("formula+enumeration") != std::string::npos);
  CHECK(res.text.find("\tNO\t") == std::string::npos);
  // n=4 k=2 row carries |E| = 4; n=5 k=2 carries 14.
  CHECK(res.text.find("4\t2\t9\t2\t1\t3\t3\t4\t3\t4\tyes") != std::string::npos);

  CountOptions big;
  big.n_lo = 30;
  big.n_hi = 30;
  big.k = 15;
  ReportResult res_big = report_count(big);
  CHECK(res_big.status == ReportStatus::ok);
  CHECK(res_big.text.find("\t-\t-\t-\t") != std::string::npos);  // no enumeration columns
  CHECK(res_big.text.find(derangement_number(30).str()) != std::string::npos);
  CHECK(res_big.text.find(size_E(30, 15).str()) != std::string::npos);

  CountOptions bad;
  bad.n_lo = 5;
  bad.n_hi = 5;
  bad.k = 9;
  CHECK_THROWS_AS(report_count(bad), error);

  CountOptions inject;
  inject.n_lo = 4;
  inject.n_hi = 4;
  inject.all_k = true;
  inject.inject_mismatch = true;
  CHECK(report_count(inject).status == ReportStatus::internal_mismatch);
}

TEST_CASE("verify report") {
  VerifyReportOptions opts;
  opts.verify.n_cap = 4;
  opts.verify.t_cap = 3;
  ReportResult res = report_verify(opts);
  CHECK(res.status == ReportStatus::ok);
  CHECK(res.text.find("FAIL") == std::string::npos);
  CHECK(res.text.find("all checks passed") != std::string::npos);

  opts.verify.inject_fault = true;
  opts.verify.module = "family";
  ReportResult faulty = report_verify(opts);
  CHECK(faulty.status == ReportStatus::invariant_failure);
  CHECK(faulty.text.find("FAIL") != std::string::npos);
}

TEST_CASE("hitting report") {
  HittingOptions opts;
  opts.source = "H:5:3";
  opts.t = 5;
  opts.restrict_window = true;
  ReportResult res = report_hitting(opts);
  CHECK(res.status == ReportStatus::ok);
  auto j = nlohmann::json::parse(res.text);
  CHECK(j["t"] == 5);
  CHECK(j.contains("counts"));
  CHECK(j.contains("bounds"));
  CHECK(j.contains("sets"));
  CHECK(j["members"] == 4);
  CHECK(j["common_point_free"] == false);  // the identity tail is shared

  opts.quotient = true;
  auto j2 = nlohmann::json::parse(report_hitting(opts).text);
  CHECK(j2["common_point_free"] == true);
}

TEST_CASE("spread decompose report") {
  SpreadDecomposeOptions opts;
  opts.family = "E:5:2";
  opts.tau = "3/2";
  opts.q = 3;
  ReportResult res = report_spread_decompose(opts);
  CHECK(res.status == ReportStatus::ok);
  auto j = nlohmann::json::parse(res.text);
  CHECK(j["tau"] == "3/2");
  CHECK(j["homogeneity_verified"] == true);
  CHECK(j["partition_exact"] == true);
  CHECK(j["covers_contained"] == true);
  CHECK(j["residual_bound_ok"] == true);
  std::uint64_t covered = j["residual_size"].get<std::uint64_t>();
  for (const auto& part : j["covers"]) covered += part["size"].get<std::uint64_t>();
  CHECK(covered == 14);

  opts.tau = "1";
  CHECK_THROWS_AS(report_spread_decompose(opts), error);
}

TEST_CASE("spread mc report determinism") {
  SpreadMcOptions opts;
  opts.preset = "singletons";
  opts.g = 64;
  opts.m = 7;
  opts.delta = 0.0714;
  opts.trials = 2000;
  opts.seed = 42;
  ReportResult a = report_spread_mc(opts);
  ReportResult b = report_spread_mc(opts);
  CHECK(a.text == b.text);
  CHECK(a.status == ReportStatus::ok);
  CHECK(a.text.find("closed_form") != std::string::npos);

  opts.m = 20;
  opts.delta = 0.5;  // m*delta > 1 without the clamp flag
  CHECK_THROWS_AS(report_spread_mc(opts), error);
  opts.clamp = true;
  CHECK(report_spread_mc(opts).status == ReportStatus::ok);
}

TEST_CASE("search report") {
  SearchOptions opts;
  opts.n = 4;
  opts.json = true;
  ReportResult res = report_search(opts);
  CHECK(res.status == ReportStatus::ok);
  auto j = nlohmann::json::parse(res.text);
  REQUIRE(j["entries"].size() >= 2);
  CHECK(j["entries"][0]["gamma0"] == 0);
  CHECK(j["entries"][0]["max_size"] == 6);
  CHECK(j["entries"][1]["max_size"] == 4);
  CHECK(j["entries"][1]["isomorphic_to_E_k"] == 2);

  SearchOptions bad;
  bad.n = 6;
  CHECK_THROWS_AS(report_search(bad), error);
}
