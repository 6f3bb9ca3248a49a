// Drives the installed CLI binary end to end: exit codes, report shapes, and
// byte-identical reruns.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cstdio>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(PERMDIV_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.output.append(buf.data(), got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace

TEST_CASE("count command") {
  RunResult res = run_cli("count --n 4..5 --all-k");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("yes") != std::string::npos);
  CHECK(res.output.find("NO") == std::string::npos);

  CHECK(run_cli("count --n 5 --k 9").exit_code == 2);
  CHECK(run_cli("count --n 4 --all-k --inject-mismatch").exit_code == 3);
}

TEST_CASE("verify command") {
  RunResult res = run_cli("verify --module counting --n-cap 4 --t 3");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("all checks passed") != std::string::npos);

  RunResult faulty = run_cli("verify --module family --n-cap 4 --t 3 --inject-fault");
  CHECK(faulty.exit_code == 1);
  CHECK(faulty.output.find("FAIL") != std::string::npos);
}

TEST_CASE("search command") {
  RunResult res = run_cli("search --n 4");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("gamma0") != std::string::npos);
  CHECK(run_cli("search --n 6").exit_code == 2);
}

TEST_CASE("spread commands") {
  RunResult dec = run_cli("spread decompose --family E:5:2 --tau 3/2 --q 3");
  CHECK(dec.exit_code == 0);
  CHECK(dec.output.find("\"homogeneity_verified\": true") != std::string::npos);
  CHECK(run_cli("spread decompose --family E:5:2 --tau 1 --q 3").exit_code == 2);

  std::string mc_args = "spread mc --preset singletons --g 64 --m 7 --delta 0.0714 --trials 2000 --seed 42";
  RunResult a = run_cli(mc_args);
  RunResult b = run_cli(mc_args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(run_cli("spread mc --preset singletons --g 8 --m 20 --delta 0.5 --trials 10").exit_code == 2);
}

TEST_CASE("hitting command") {
  RunResult res = run_cli("hitting --family H:5:3 --t 5 --restrict --quotient");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"counts\"") != std::string::npos);
  CHECK(res.output.find("\"bounds\"") != std::string::npos);
}

TEST_CASE("construct round-trips through file literals") {
  std::string path = "/tmp/permdiv_cli_test_family.txt";
  RunResult make = run_cli("construct --family E:4:2 --out " + path);
  CHECK(make.exit_code == 0);
  RunResult dec = run_cli("spread decompose --family file:" + path + " --tau 3/2 --q 3");
  CHECK(dec.exit_code == 0);
  std::remove(path.c_str());

  std::string bin = "/tmp/permdiv_cli_test_family.bin";
  CHECK(run_cli("construct --family H:4:2 --out " + bin + " --binary").exit_code == 0);
  RunResult hit = run_cli("hitting --family file:" + bin + " --t 4 --restrict");
  CHECK(hit.exit_code == 0);
  std::remove(bin.c_str());
}
