// Drives the installed binary through its documented surface: subcommands,
// document formats and the exit-status contract (0 analysis, 1 falsified
// property, 2 bad input).

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
  int status;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(ULTRA_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  EXPECT_NE(pipe, nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int raw = pclose(pipe);
  return {WEXITSTATUS(raw), out};
}

std::string fix(const std::string& name) {
  return std::string(ULTRA_FIXTURE_DIR) + "/" + name;
}

using nlohmann::json;

}  // namespace

TEST(Cli, ValidateKindsAndExitCodes) {
  auto ultra = run("validate " + fix("R4.json"));
  EXPECT_EQ(ultra.status, 0);
  EXPECT_NE(ultra.out.find("ultrametric"), std::string::npos);

  auto metric = run("validate " + fix("NU3.json") + " --json");
  EXPECT_EQ(metric.status, 0);
  const json j = json::parse(metric.out);
  EXPECT_EQ(j["kind"], "metric");
  EXPECT_EQ(j["witness"], json::array({"x1", "x2", "x3"}));

  EXPECT_EQ(run("validate " + fix("invalid_triangle.json")).status, 1);
}

TEST(Cli, UsageAndInputErrorsExit2) {
  EXPECT_EQ(run("validate does_not_exist.json").status, 2);
  EXPECT_EQ(run("no-such-command").status, 2);
  EXPECT_EQ(run("validate " + fix("bad_negative.csv")).status, 2);
  EXPECT_EQ(run("--help").status, 0);
}

TEST(Cli, TreeOutputs) {
  auto text = run("tree " + fix("R4.json"));
  EXPECT_EQ(text.status, 0);
  EXPECT_NE(text.out.find("nodes: 7"), std::string::npos);

  auto j = json::parse(run("tree " + fix("R4.json") + " --json").out);
  EXPECT_EQ(j["label"], "3");
  EXPECT_EQ(j["children"][0]["point"], "p1");

  auto dot = run("tree " + fix("R4.json") + " --dot");
  EXPECT_NE(dot.out.find("digraph"), std::string::npos);

  // feeding a metric-only space to an ultrametric analysis falsifies the claim
  EXPECT_EQ(run("tree " + fix("NU3.json")).status, 1);
}

TEST(Cli, GammaCounts) {
  auto j = json::parse(run("gamma " + fix("NU3.json") + " --json").out);
  EXPECT_EQ(j["vertex_count"], 6);
  EXPECT_EQ(j["edge_count"], 6);
  EXPECT_EQ(j["is_tree"], false);
  EXPECT_EQ(j["ultrametric"], false);

  auto r4 = json::parse(run("gamma " + fix("R4.json") + " --json").out);
  EXPECT_EQ(r4["is_tree"], true);
}

TEST(Cli, BallsCsvInput) {
  auto j = json::parse(run("balls " + fix("R4.csv") + " --json").out);
  EXPECT_EQ(j["count"], 7);
}

TEST(Cli, IsoGroupAndPair) {
  auto j = json::parse(run("iso " + fix("R4.json") + " --json").out);
  EXPECT_EQ(j["order"], "2");
  EXPECT_EQ(j["orbits"].size(), 3u);

  auto pair = json::parse(run("iso " + fix("E3.json") + " " + fix("E3x7.json") + " --json").out);
  EXPECT_EQ(pair["isometric"], false);
}

TEST(Cli, CheckRBreakdown) {
  auto j = json::parse(run("check-r " + fix("R4.json") + " --json").out);
  EXPECT_EQ(j["max_rigid"], true);
  EXPECT_EQ(j["criteria"]["min_fix_is_size_minus_2"]["holds"], true);
  EXPECT_EQ(j["criteria"]["group_order_is_2"]["order"], "2");
  EXPECT_EQ(j["criteria"]["tree_is_binary_chain"]["holds"], true);
  EXPECT_EQ(j["criteria"]["min_fix_is_size_minus_2"]["witness"]["p3"], "p4");

  auto f3 = json::parse(run("check-r " + fix("F3.json") + " --json").out);
  EXPECT_EQ(f3["max_rigid"], false);
  EXPECT_EQ(f3["iso_order"], "4");
  EXPECT_EQ(f3["min_fixed_points"], 0);
}

TEST(Cli, HamPathAndStar) {
  auto path = json::parse(run("ham-path " + fix("R4.json") + " --json").out);
  EXPECT_EQ(path["found"], true);
  EXPECT_EQ(path["path"], json::array({"p1", "p2", "p3", "p4"}));
  EXPECT_EQ(path["weights"], json::array({"3", "2", "1"}));

  auto cyc = json::parse(run("ham-path " + fix("R4.json") + " --cycle --json").out);
  EXPECT_EQ(cyc["weights"], json::array({"3", "2", "1", "3"}));

  auto none = json::parse(run("ham-path " + fix("F3.json") + " --json").out);
  EXPECT_EQ(none["found"], false);

  auto star = json::parse(run("star " + fix("R4.json") + " --json").out);
  EXPECT_EQ(star["center"], "p4");
  EXPECT_EQ(star["rays"][0]["weight"], "1");

  auto level = json::parse(run("star " + fix("R4.json") + " --level 2 --json").out);
  EXPECT_EQ(level["is_star"], true);
  EXPECT_EQ(level["level"], 1);
  EXPECT_EQ(level["rays"], 2);
}

TEST(Cli, CompleteStar) {
  auto j = json::parse(run("complete-star " + fix("star_r4.json") + " --json").out);
  EXPECT_EQ(j["unique"], true);
  EXPECT_EQ(j["space"]["points"].size(), 4u);

  auto tied = json::parse(run("complete-star " + fix("star_tied.json") + " --json").out);
  EXPECT_EQ(tied["unique"], false);
  EXPECT_TRUE(tied.contains("second_completion"));
}

TEST(Cli, WeaksimAndOracle) {
  auto sim = json::parse(
      run("weaksim " + fix("E3.json") + " " + fix("E3x7.json") + " --json").out);
  EXPECT_EQ(sim["weakly_similar"], true);
  EXPECT_EQ(sim["value_map"], json::array({json::array({"0", "0"}),
                                           json::array({"1", "7"})}));

  EXPECT_EQ(run("oracle iso " + fix("R4.json")).status, 0);
  EXPECT_EQ(run("oracle ham-paths " + fix("F3.json")).status, 0);
  EXPECT_EQ(run("oracle weaksim " + fix("E3.json") + " " + fix("E3x7.json")).status, 0);
  EXPECT_EQ(run("oracle weaksim " + fix("E3.json")).status, 2);  // missing file
  EXPECT_EQ(run("oracle nope " + fix("E3.json")).status, 2);
}

TEST(Cli, GenRoundTripsThroughAnalysis) {
  const std::string tmp = std::string(ULTRA_BINARY_DIR) + "/gen_chain.json";
  EXPECT_EQ(run("gen -k chain -n 6 -s 11 -o " + tmp).status, 0);
  auto j = json::parse(run("check-r " + tmp + " --json").out);
  EXPECT_EQ(j["max_rigid"], true);

  const std::string tmp2 = std::string(ULTRA_BINARY_DIR) + "/gen_metric.json";
  EXPECT_EQ(run("gen -k metric -n 5 -s 11 -o " + tmp2).status, 0);
  auto v = json::parse(run("validate " + tmp2 + " --json").out);
  EXPECT_EQ(v["kind"], "metric");

  // determinism: same seed, same document
  auto a = run("gen -k tree -n 7 -s 123");
  auto b = run("gen -k tree -n 7 -s 123");
  EXPECT_EQ(a.out, b.out);

  // ULTRA_SEED env supplies the default seed
  auto c = run("gen -k tree -n 7");
  setenv("ULTRA_SEED", "123", 1);
  auto d = run("gen -k tree -n 7");
  unsetenv("ULTRA_SEED");
  EXPECT_EQ(b.out, d.out);
  EXPECT_NE(c.out, d.out);
}
