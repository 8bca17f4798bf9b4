#include "sumsetlab/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sumsetlab/sweep.hpp"
#include "sumsetlab/verify.hpp"

namespace sumsetlab {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

TEST(CliSumsetTest, Examples) {
  Result r = run({"sumset", "--set", "0,1,3"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_TRUE(has(r.out, "{0,1,2,3,4,6}"));
  EXPECT_TRUE(has(r.out, "k=3 b=1 R=3"));

  r = run({"sumset", "--set", "0"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_TRUE(has(r.out, "{0}"));

  r = run({"sumset", "--group", "heisenberg", "--set", "[[0,0,1],[1,0,1]]", "--square", "--format", "json"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("size"), 3);

  r = run({"sumset", "--set", "10,16,28", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("normalization").at("scale"), 6);
  EXPECT_EQ(j.at("stats").at("b"), 1);
}

TEST(CliDetectTest, Examples) {
  Result r = run({"detect", "--set", "0,1,3,4,6"});
  EXPECT_EQ(r.code, cli::kNegative);
  EXPECT_TRUE(has(r.out, "not structured"));

  r = run({"detect", "--set", "0,1,2,4"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_TRUE(has(r.out, "seed {0,1}"));
  EXPECT_TRUE(has(r.out, "{0,1} -> {0,1,2} -> {0,1,2,4}"));

  r = run({"detect", "--product", "--inner", "cyclic:5", "--points", "(0,2),(1,3),(2,4)"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_TRUE(has(r.out, "x=1 y=2"));

  r = run({"detect", "--product", "--inner", "cyclic:5", "--points", "(0,0),(1,0),(2,1)"});
  EXPECT_EQ(r.code, cli::kNegative);

  r = run({"detect", "--product", "--inner", "cyclic:5", "--points", "(0,0),(0,1),(2,1)"});
  EXPECT_EQ(r.code, cli::kMalformed);

  r = run({"detect", "--group", "heisenberg", "--set", "[[0,0,0],[1,0,0],[0,1,0]]"});
  EXPECT_EQ(r.code, cli::kNegative);
  r = run({"detect", "--group", "heisenberg", "--set", "[[0,0,1],[1,0,1],[2,0,1]]"});
  EXPECT_EQ(r.code, cli::kOk);
}

TEST(CliVerifyTest, Examples) {
  Result r = run({"verify", "--theorem", "thm_A", "--set", "0,1,2"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_TRUE(has(r.out, "verdict: holds"));

  r = run({"verify", "--theorem", "lemma_2", "--set", "0,1,3"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_TRUE(has(r.out, "(equality)"));

  r = run({"verify", "--theorem", "thm_4", "--group", "heisenberg", "--set", "[[0,0,0],[1,0,0],[0,1,0]]"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_TRUE(has(r.out, "hypothesis not met"));

  r = run({"verify", "--theorem", "cauchy_davenport", "--p", "5", "--set", "0,1"});
  EXPECT_EQ(r.code, cli::kOk);
  r = run({"verify", "--theorem", "cauchy_davenport", "--p", "6", "--set", "0,1"});
  EXPECT_EQ(r.code, cli::kMalformed);
}

TEST(CliErrorsTest, ExitCodes) {
  EXPECT_EQ(run({"sumset", "--set", "0,x"}).code, cli::kMalformed);
  EXPECT_EQ(run({"sumset"}).code, cli::kMalformed);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kMalformed);
  EXPECT_EQ(run({}).code, cli::kMalformed);
  EXPECT_EQ(run({"verify", "--theorem", "thm_9", "--set", "0,1,2"}).code, cli::kMalformed);
  EXPECT_EQ(run({"verify", "--theorem", "lemma_2", "--set", "0,2,4"}).code, cli::kMalformed);
  EXPECT_EQ(run({"sweep", "--theorem", "thm_2", "--mode", "random", "--count", "10"}).code, cli::kMalformed);
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
  EXPECT_EQ(run({"sweep", "--help"}).code, cli::kOk);

  const Result r = run({"sweep", "--theorem", "thm_A", "--max-instances", "10", "--format", "pretty"});
  EXPECT_EQ(r.code, cli::kIncomplete);
  EXPECT_TRUE(has(r.out, "(incomplete)"));
}

TEST(CliSweepTest, Examples) {
  Result r = run({"sweep", "--theorem", "cor_1", "--nmax", "12", "--kmin", "3", "--kmax", "7", "--format", "json"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("counts").at("counterexamples"), 0);

  r = run({"sweep", "--theorem", "thm_2", "--inner", "cyclic:3", "--amax", "8", "--kmax", "5", "--mode", "random",
           "--count", "100000", "--seed", "42"});
  EXPECT_EQ(r.code, cli::kOk);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("counts").at("counterexamples"), 0);
  EXPECT_EQ(j.at("seed"), 42);

  r = run({"sweep", "--theorem", "cauchy_davenport", "--p", "7"});
  EXPECT_EQ(r.code, cli::kOk);

  r = run({"sweep", "--theorem", "cor_2", "--format", "csv"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_TRUE(has(r.out, "interval_subsets"));
}

TEST(CliSweepTest, IdenticalInvocationsGiveIdenticalJson) {
  const std::vector<std::string> args{"sweep", "--theorem", "thm_4",    "--box",  "3",     "--kmax", "5",
                                      "--mode",  "random",  "--count",  "3000", "--seed", "9"};
  std::vector<std::string> no_timing = args;
  no_timing.push_back("--no-timing");
  EXPECT_EQ(run(no_timing).out, run(no_timing).out);

  auto strip = [](const std::string& text) {
    auto j = nlohmann::json::parse(text);
    j.erase("timing");
    return j.dump();
  };
  EXPECT_EQ(strip(run(args).out), strip(run(args).out));
  EXPECT_EQ(strip(run(args).out), nlohmann::json::parse(run(no_timing).out).dump());
}

TEST(CliSweepTest, WritesReportAndProgressFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "sumsetlab_cli_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "report.json").string();
  const Result r = run({"sweep", "--theorem", "cauchy_davenport", "--p", "5", "--out", path, "--workers", "2"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream report(path);
  EXPECT_EQ(nlohmann::json::parse(report).at("theorem"), "cauchy_davenport");
  std::ifstream progress(path + ".progress.jsonl");
  std::string line, last;
  while (std::getline(progress, line)) last = line;
  ASSERT_FALSE(last.empty());
  EXPECT_EQ(nlohmann::json::parse(last).at("done"), 31 * 31);
  std::filesystem::remove_all(dir);
}

// The CLI only adapts arguments: its JSON equals the library's for the same input.
TEST(CliReplayTest, VerifyMatchesLibrary) {
  const GroupPtr z5 = GroupSpec::cyclic(5), h = GroupSpec::heisenberg();
  struct Fixture {
    std::vector<std::string> args;
    VerificationReport expected;
  };
  const std::vector<ProductPoint> pts{{0, z5->element({2})}, {1, z5->element({3})}, {2, z5->element({4})}};
  const GroupSubset s(h, {h->element({0, 0, 1}), h->element({1, 0, 1}), h->element({2, 0, 1})});
  const std::vector<Fixture> fixtures{
      {{"--theorem", "thm_A", "--set", "0,1,2,4"}, verify_thm_A({0, 1, 2, 4})},
      {{"--theorem", "lemma_1", "--set", "0,2,3,7"}, verify_lemma_1({0, 2, 3, 7})},
      {{"--theorem", "cor_1", "--set", "0,1,3,4,6"}, verify_cor_1({0, 1, 3, 4, 6})},
      {{"--theorem", "cor_2", "--set", "0,1,2,4,5", "--N", "6"}, verify_cor_2({0, 1, 2, 4, 5}, 6)},
      {{"--theorem", "eq1", "--set", "0,3,6", "--set2", "1,4"}, verify_eq1({0, 3, 6}, {1, 4})},
      {{"--theorem", "cauchy_davenport", "--p", "7", "--set", "0,3", "--set2", "1,2"},
       verify_cauchy_davenport(7, {0, 3}, {1, 2})},
      {{"--theorem", "thm_1", "--inner", "cyclic:5", "--points", "(0,2),(1,3),(2,4)"}, verify_thm_1(pts)},
      {{"--theorem", "thm_2", "--inner", "cyclic:5", "--points", "[[0,[2]],[1,[3]],[2,[4]]]"}, verify_thm_2(pts)},
      {{"--theorem", "thm_4", "--group", "heisenberg", "--set", "[[0,0,1],[1,0,1],[2,0,1]]"},
       verify_theorem_prem1(s)},
      {{"--theorem", "thm_3", "--group", "heisenberg", "--set", "[[0,0,1],[1,0,1],[2,0,1]]"},
       verify_theorem_prem(s)},
  };
  for (const Fixture& f : fixtures) {
    std::vector<std::string> args{"verify", "--format", "json", "--no-timing"};
    args.insert(args.end(), f.args.begin(), f.args.end());
    const Result r = run(args);
    EXPECT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_EQ(r.out, f.expected.to_json(false).dump(2) + "\n") << f.args[1];

    // Replaying the serialized instance gives the same report.
    const Result replay = run({"verify", "--format", "json", "--no-timing", "--theorem", f.args[1], "--instance",
                               f.expected.instance.dump()});
    EXPECT_EQ(replay.out, r.out);
  }
}

TEST(CliReplayTest, SweepMatchesLibrary) {
  SweepSpec s;
  s.theorem = TheoremId::lemma_1_L4;
  s.family = NormalizedSetsFamily{10, 3, 6, false};
  s.workers = 1;
  const Result r = run({"sweep", "--theorem", "lemma_1", "--nmax", "10", "--kmax", "6", "--no-timing"});
  EXPECT_EQ(r.out, run_sweep(s).to_json(false).dump(2) + "\n");
}

}  // namespace
}  // namespace sumsetlab
