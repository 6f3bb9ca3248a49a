#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <string>

#include "doctest.h"
#include "permdiv.h"

namespace {

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  permdiv_free_string(s);
  return out;
}

}  // namespace

TEST_CASE("version and error reporting") {
  CHECK(std::strlen(permdiv_version()) > 0);
  permdiv_family* f = nullptr;
  CHECK(permdiv_family_build("bogus:0", &f) == PERMDIV_CONFIG_ERROR);
  CHECK(std::strlen(permdiv_last_error()) > 0);
}

TEST_CASE("family handles") {
  permdiv_family* h = nullptr;
  REQUIRE(permdiv_family_build("H:5:3", &h) == PERMDIV_OK);
  CHECK(permdiv_family_n(h) == 5);
  CHECK(permdiv_family_size(h) == 4);

  permdiv_family* nh = nullptr;
  REQUIRE(permdiv_family_neighborhood(h, &nh) == PERMDIV_OK);
  CHECK(permdiv_family_size(nh) == 10);

  int intersecting = 0;
  CHECK(permdiv_family_is_intersecting(h, &intersecting) == PERMDIV_OK);
  CHECK(intersecting == 1);

  permdiv_family_stats st{};
  char* common = nullptr;
  REQUIRE(permdiv_family_stats_get(h, &st, &common) == PERMDIV_OK);
  CHECK(st.size == 4);
  CHECK(st.max_degree == 4);  // the shared tail points sit in every member
  CHECK(st.diversity == 0);
  CHECK(take(common) == "4->4,5->5");

  permdiv_family_free(nh);
  permdiv_family_free(h);
}

TEST_CASE("isomorphism through the C surface") {
  permdiv_family* a = nullptr;
  permdiv_family* b = nullptr;
  REQUIRE(permdiv_family_build("star:4:1:1", &a) == PERMDIV_OK);
  REQUIRE(permdiv_family_build("star:4:2:3", &b) == PERMDIV_OK);
  int iso = 0;
  char* pi = nullptr;
  char* rho = nullptr;
  REQUIRE(permdiv_family_isomorphic(a, b, &iso, &pi, &rho) == PERMDIV_OK);
  CHECK(iso == 1);
  CHECK(!take(pi).empty());
  CHECK(!take(rho).empty());
  permdiv_family_free(a);
  permdiv_family_free(b);
}

TEST_CASE("exact counts as decimal strings") {
  char* s = nullptr;
  REQUIRE(permdiv_derangement_number(10, &s) == PERMDIV_OK);
  CHECK(take(s) == "1334961");
  REQUIRE(permdiv_menage_number(5, &s) == PERMDIV_OK);
  CHECK(take(s) == "13");
  REQUIRE(permdiv_size_N_H(6, 3, &s) == PERMDIV_OK);
  CHECK(take(s) == "56");
  REQUIRE(permdiv_size_E(6, 3, &s) == PERMDIV_OK);
  CHECK(take(s) == "60");
  CHECK(permdiv_size_E(5, 9, &s) == PERMDIV_CONFIG_ERROR);

  uint8_t ones[16];
  std::memset(ones, 1, sizeof(ones));
  REQUIRE(permdiv_permanent01(ones, 4, &s) == PERMDIV_OK);
  CHECK(take(s) == "24");

  REQUIRE(permdiv_double_avoid_count(6, "", "", 1, 1, 2, 2, &s) == PERMDIV_OK);
  CHECK(take(s) == "24");  // no constraints: 4! extensions

  REQUIRE(permdiv_hitting_weighted_count(8, 5, 2, &s) == PERMDIV_OK);
  CHECK(take(s) == "44");

  double rel = -1;
  REQUIRE(permdiv_asymptotic_estimate(50, 48, 1, &s, &rel) == PERMDIV_OK);
  CHECK(!take(s).empty());
  CHECK(rel > 0);
  CHECK(rel < 0.1);
}

TEST_CASE("report entry points") {
  permdiv_count_options count{};
  count.n_lo = 4;
  count.n_hi = 4;
  count.all_k = 1;
  char* report = nullptr;
  CHECK(permdiv_report_count(&count, &report) == PERMDIV_OK);
  CHECK(take(report).find("match") != std::string::npos);

  permdiv_verify_options verify{};
  verify.n_cap = 4;
  verify.t_cap = 3;
  verify.module = "counting";
  CHECK(permdiv_report_verify(&verify, &report) == PERMDIV_OK);
  CHECK(take(report).find("all checks passed") != std::string::npos);

  permdiv_search_options search{};
  search.n = 6;
  search.gamma0 = 0;
  CHECK(permdiv_report_search(&search, &report) == PERMDIV_CONFIG_ERROR);
}
