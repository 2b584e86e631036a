#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"

using nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr discarded.
CliRun run(const std::string& args) {
  const std::string cmd = std::string(QBIC_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_path(const std::string& name) { return ::testing::TempDir() + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Cli, ClassifyBuiltins) {
  EXPECT_EQ(run("classify --builtin fermat --q 2 --n 4").out, "1^5\n");
  EXPECT_EQ(run("classify --builtin family:n4-degeneration:t=1 --q 2").out, "N3+1\n");
  EXPECT_EQ(run("classify --builtin standard:N2+1^3 --q 3").out, "N2+1+1+1\n");
  const CliRun r = run("classify --builtin fermat --q 3 --n 2 --json");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["signature"], "1^3");
  EXPECT_EQ(j["q"], 3);
}

TEST(Cli, ClassifyGramFile) {
  const std::string path = temp_path("zero4.json");
  std::ofstream(path) << R"({"field": {"p": 2, "s": 2}, "e": 1, "dim": 4,
    "gram": [[[0,0],[0,0],[0,0],[0,0]], [[0,0],[0,0],[0,0],[0,0]],
             [[0,0],[0,0],[0,0],[0,0]], [[0,0],[0,0],[0,0],[0,0]]]})";
  const CliRun r = run("classify --gram " + path);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "N1^4\n");
  std::remove(path.c_str());
}

TEST(Cli, Counts) {
  EXPECT_EQ(run("count lines --builtin fermat --q 2 --n 3").out, "27\n");
  EXPECT_EQ(run("count points --builtin fermat --q 3 --n 2").out, "28\n");
  EXPECT_EQ(run("count planes --builtin fermat --q 2 --n 5").out, "891\n");
  EXPECT_EQ(run("count points --builtin fermat --q 2 --n 3 --ext 2").out, "369\n");
}

TEST(Cli, CountReports) {
  const json lines = json::parse(run("count lines --builtin fermat --q 2 --n 3 --report").out);
  EXPECT_EQ(lines["count"], 27);
  EXPECT_EQ(lines["report"]["per_point"], json({{"3", 45}}));
  const json points = json::parse(run("count points --builtin standard:N2+1^2 --q 2 --report").out);
  EXPECT_EQ(points["singular_points"], 1);
  const json planes = json::parse(run("count planes --builtin fermat --q 2 --n 5 --report").out);
  EXPECT_EQ(planes["count"], 891);
  // 693 points, each on (q+1)(q^3+1) = 27 planes.
  EXPECT_EQ(planes["points_on_k_planes"], json({{"27", 693}}));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("classify --builtin klein --q 2").code, 1);
  EXPECT_EQ(run("classify --builtin fermat --q 6").code, 1);
  EXPECT_EQ(run("classify --gram /nonexistent/form.json").code, 1);
  EXPECT_EQ(run("classify").code, 1);
  EXPECT_EQ(run("count triangles --builtin fermat").code, 1);
  EXPECT_EQ(run("--no-such-flag").code, 1);
  EXPECT_EQ(run("count points --builtin fermat --q 9 --n 8").code, 3);
  EXPECT_EQ(run("count lines --builtin fermat --q 2 --n 3").code, 0);
}

TEST(Cli, FormulasTable) {
  const CliRun r = run("formulas");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["plucker_degree"]["routes_agree"], true);
  EXPECT_EQ(j["chern"]["noether_holds"], true);
  EXPECT_EQ(j["binomial_identity"]["holds"], true);
}

TEST(Cli, VerifySuiteReportIsDeterministicAndRoundTrips) {
  const std::string a = temp_path("suite_a.json"), b = temp_path("suite_b.json");
  const CliRun ra = run("verify-suite --q 2 --max-n 3 --seed 11 --quiet --json " + a);
  const CliRun rb = run("verify-suite --q 2 --max-n 3 --seed 11 --quiet --json " + b);
  const json ja = json::parse(slurp(a)), jb = json::parse(slurp(b));
  EXPECT_EQ(ra.code, rb.code);
  EXPECT_EQ(ja["schema"], 1);
  EXPECT_EQ(ja["determinism_hash"], jb["determinism_hash"]);
  EXPECT_EQ(ja.dump(2) + "\n", slurp(a));
  for (const auto& c : ja["checks"]) {
    for (const char* key : {"name", "reference", "expected", "computed", "status", "runtime_ms"}) EXPECT_TRUE(c.contains(key));
    const std::string s = c["status"];
    EXPECT_TRUE(s == "pass" || s == "fail" || s == "skipped-range");
  }
  // Enumerations beyond --max-n are reported as skipped-range.
  std::size_t skipped = 0;
  for (const auto& c : ja["checks"]) skipped += c["status"] == "skipped-range";
  EXPECT_GT(skipped, 0u);
  EXPECT_EQ(ja["summary"]["skipped-range"], skipped);
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST(Cli, VerifySuiteExitReflectsFailures) {
  const std::string a = temp_path("suite_c.json");
  const CliRun r = run("verify-suite --q 2 --max-n 3 --quiet --json " + a);
  const json j = json::parse(slurp(a));
  EXPECT_EQ(r.code, j["summary"]["fail"] == 0 ? 0 : 4);
  std::remove(a.c_str());
}
