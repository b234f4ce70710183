#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
};

CliRun run(const std::string& args) {
  // stdout only; warnings and errors go to stderr.
  std::string cmd = std::string(PNLOGIC_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& rel) { return (fs::path(PNLOGIC_DATA_DIR) / rel).string(); }

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

TEST(Eval, Examples) {
  CliRun k = run("eval --model " + data("models/k.json") + " --world 2 --formula \"[](p->q)\"");
  EXPECT_EQ(k.code, 0) << k.out;
  EXPECT_EQ(k.out.substr(0, 5), "true\n");

  CliRun bottom = run("eval --model " + data("models/k.json") + " --world 0 --formula \"_|_\"");
  EXPECT_EQ(bottom.code, 1);
  EXPECT_TRUE(contains(bottom.out, "false"));

  CliRun seven = run("eval --model " + data("models/seven.json") + " --world 0 --formula \"[][]p\"");
  EXPECT_EQ(seven.code, 1);
  CliRun box = run("eval --model " + data("models/seven.json") + " --world 0 --formula \"[]p\"");
  EXPECT_EQ(box.code, 0);
  EXPECT_TRUE(contains(box.out, "{0}"));
}

TEST(Eval, Errors) {
  EXPECT_EQ(run("eval --model " + data("models/k.json") + " --world 3 --formula p").code, 2);
  EXPECT_EQ(run("eval --model " + data("models/k.json") + " --world 0 --formula \"p ->\"").code, 2);
  EXPECT_EQ(run("eval --model " + data("models/nope.json") + " --world 0 --formula p").code, 2);
  EXPECT_EQ(run("eval --model " + data("models/k.json") + " --world 0 --formula p --box-mode odd").code, 2);
  EXPECT_EQ(run("eval --world 0 --formula p").code, 2);
}

TEST(Eval, Json) {
  CliRun r = run("eval --json --model " + data("models/k.json") + " --world 2 --formula \"[]p -> []q\"");
  EXPECT_EQ(r.code, 1);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j["forced"].get<bool>());
}

TEST(Check, Examples) {
  CliRun seven = run("check " + data("models/seven.json"));
  EXPECT_EQ(seven.code, 0) << seven.out;
  CliRun seven_json = run("check --json " + data("models/seven.json"));
  auto j = nlohmann::json::parse(seven_json.out);
  std::map<std::string, bool> holds;
  for (const auto& r : j["conditions"]) holds[r["condition"]] = r["holds"];
  EXPECT_TRUE(holds.at("cond1"));
  EXPECT_TRUE(holds.at("star"));
  EXPECT_FALSE(holds.at("starstar"));

  EXPECT_EQ(run("check --model " + data("models/k.json")).code, 0);
  EXPECT_EQ(run("check --frame " + data("models/k.json")).code, 0);
  EXPECT_EQ(run("check " + data("models/cond1_violation.json")).code, 1);
  EXPECT_EQ(run("check " + data("models/out_of_range.json")).code, 2);
}

TEST(Search, Examples) {
  fs::path out = fs::temp_directory_path() / "pnlogic_cli_test_countermodel.json";
  fs::remove(out);
  EXPECT_EQ(run("search \"[]a -> a\" --no-out").code, 0);
  CliRun k = run("search \"[](a->b) -> ([]a -> []b)\" --out " + out.string());
  EXPECT_EQ(k.code, 1) << k.out;
  ASSERT_TRUE(fs::exists(out));
  std::ifstream in(out);
  auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["witness"]["scheme"], "[](a -> b) -> []a -> []b");
  EXPECT_TRUE(j["witness"]["assignment"].contains("a"));
  fs::remove(out);

  CliRun diamond = run("search \"[]a -> <*>a\" --require cond2 --no-out");
  EXPECT_EQ(diamond.code, 1);
  EXPECT_TRUE(contains(diamond.out, "countermodel-found"));
  EXPECT_EQ(run("search \"[]a -> a\" --box-mode simple --max-worlds 2 --no-out").code, 1);
}

TEST(Search, ErrorsAndBudget) {
  EXPECT_EQ(run("search \"[]a -> a\" --max-worlds 4").code, 2);
  EXPECT_EQ(run("search \"[]a -> a\" --require cond1").code, 2);
  EXPECT_EQ(run("search \"[]a -> a\" --cap 9").code, 2);
  EXPECT_EQ(run("search \"[]a ->\"").code, 2);
  CliRun budget = run("search \"[]a -> a\" --budget 100 --no-out");
  EXPECT_EQ(budget.code, 2);
  EXPECT_TRUE(contains(budget.out, "sample-budget-exhausted"));
}

TEST(Replicate, Examples) {
  CliRun birel = run("replicate birel");
  EXPECT_EQ(birel.code, 0);
  EXPECT_TRUE(contains(birel.out, "PASS birel"));
  CliRun all = run("replicate all");
  EXPECT_EQ(all.code, 0) << all.out;
  EXPECT_TRUE(contains(all.out, "9/9 passed"));
  EXPECT_EQ(run("replicate bogus").code, 2);
}

TEST(Prove, Examples) {
  CliRun t = run("prove " + data("proofs/valid_t_instance.proof"));
  EXPECT_EQ(t.code, 0);
  EXPECT_TRUE(contains(t.out, "valid"));
  CliRun mp = run("prove " + data("proofs/broken_mp_non_implication.proof"));
  EXPECT_EQ(mp.code, 1);
  EXPECT_TRUE(contains(mp.out, "invalid at line 9"));
  CliRun ext = run("prove --soundness-sweep " + data("proofs/valid_ext_biconditional.proof"));
  EXPECT_EQ(ext.code, 0) << ext.out;
  EXPECT_TRUE(contains(ext.out, "soundness sweep clean"));
  EXPECT_EQ(run("prove " + data("proofs/missing.proof")).code, 2);
  EXPECT_EQ(run("prove " + data("models/k.json")).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

}  // namespace
