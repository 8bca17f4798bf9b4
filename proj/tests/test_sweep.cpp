#include "sumsetlab/sweep.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <mutex>

#include "oracles.hpp"
#include "sumsetlab/error.hpp"

namespace sumsetlab {
namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

SweepSpec spec(TheoremId id, SweepFamily family, unsigned workers = 1) {
  SweepSpec s;
  s.theorem = id;
  s.family = std::move(family);
  s.workers = workers;
  return s;
}

ProductSetsFamily product_family(Int n, SampleMode mode, std::uint64_t count, std::optional<std::uint64_t> seed) {
  ProductSetsFamily f;
  f.inner = GroupSpec::cyclic(n);
  f.mode = mode;
  f.count = count;
  f.seed = seed;
  return f;
}

TEST(SweepCountsTest, NormalizedFamilyMatchesOracle) {
  std::uint64_t sets = 0, small_doubling = 0;
  for (const auto& a : oracle::subsets_of_range(0, 12)) {
    if (a.front() != 0 || a.size() < 3 || a.size() > 7 || oracle::gcd_of(a) != 1) continue;
    ++sets;
    small_doubling += oracle::sumset(a, a).size() + 4 <= 3 * a.size();
  }
  const SweepReport r = run_sweep(spec(TheoremId::thm_A_3k4, NormalizedSetsFamily{}));
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.counts.instances, sets);
  EXPECT_EQ(r.counts.hypothesis_met, small_doubling);
  EXPECT_EQ(r.counts.holds, small_doubling);
  EXPECT_EQ(r.counts.vacuous, sets - small_doubling);
}

TEST(SweepCountsTest, RawModeEnumeratesEverySubset) {
  std::uint64_t expected = 0;
  for (std::uint64_t k = 3; k <= 5; ++k) expected += binomial(10, k);
  const SweepReport r = run_sweep(spec(TheoremId::lemma_2_L2, NormalizedSetsFamily{9, 3, 5, true}));
  EXPECT_EQ(r.counts.instances, expected);
  EXPECT_EQ(r.counts.counterexamples, 0u);
}

TEST(SweepCountsTest, FamilySizes) {
  std::uint64_t interval = 0;
  for (int n = 2; n <= 12; ++n) interval += (1u << n) - 1;
  EXPECT_EQ(planned_instances(spec(TheoremId::cor_2_M1, IntervalSubsetsFamily{})), interval);
  EXPECT_EQ(planned_instances(spec(TheoremId::cauchy_davenport, ResiduePairsFamily{7})), 127u * 127u);
  BoxSubsetsFamily box{GroupSpec::heisenberg(), 1, 3, 3};
  EXPECT_EQ(planned_instances(spec(TheoremId::thm_4_prem1, box)), binomial(27, 3));

  std::uint64_t product = 0;
  for (const auto& a : oracle::subsets_of_range(0, 8)) {
    if (a.front() != 0 || a.size() < 3 || a.size() > 5 || oracle::gcd_of(a) != 1) continue;
    std::uint64_t g = 1;
    for (std::size_t i = 0; i < a.size(); ++i) g *= 3;
    product += g;
  }
  EXPECT_EQ(planned_instances(spec(TheoremId::thm_2_structure, product_family(3, SampleMode::exhaustive, 0, {}))),
            product);
}

TEST(SweepTest, DeterministicAcrossWorkerCounts) {
  const std::vector<SweepSpec> specs{
      spec(TheoremId::cor_1_M3, NormalizedSetsFamily{10, 3, 6}),
      spec(TheoremId::thm_2_structure, product_family(5, SampleMode::random, 20000, 42)),
      spec(TheoremId::thm_4_prem1, BoxSubsetsFamily{GroupSpec::heisenberg(), 3, 3, 5, SampleMode::random, 5000, 7}),
  };
  for (const SweepSpec& base : specs) {
    std::string reference;
    for (unsigned workers : {1u, 2u, 4u}) {
      SweepSpec s = base;
      s.workers = workers;
      const std::string text = run_sweep(s).to_json(false).dump();
      if (reference.empty()) reference = text;
      EXPECT_EQ(text, reference) << "workers=" << workers;
      EXPECT_EQ(run_sweep(s).to_json(false).dump(), reference);
    }
  }
}

TEST(SweepTest, SeedsChangeRandomInstances) {
  auto s = spec(TheoremId::thm_2_structure, product_family(5, SampleMode::random, 5000, 1));
  const SweepReport a = run_sweep(s);
  std::get<ProductSetsFamily>(s.family).seed = 2;
  const SweepReport b = run_sweep(s);
  EXPECT_EQ(a.seed, std::optional<std::uint64_t>(1));
  EXPECT_NE(a.counts.hypothesis_met, b.counts.hypothesis_met);
}

TEST(SweepTest, RandomModeNeedsSeed) {
  EXPECT_THROW(run_sweep(spec(TheoremId::thm_2_structure, product_family(3, SampleMode::random, 10, {}))),
               PreconditionError);
}

TEST(SweepTest, LimitsYieldIncompleteReports) {
  SweepSpec s = spec(TheoremId::thm_A_3k4, NormalizedSetsFamily{});
  s.max_instances = 100;
  SweepReport r = run_sweep(s);
  EXPECT_FALSE(r.complete);
  EXPECT_FALSE(r.ok());
  EXPECT_LE(r.counts.instances, 100u);
  EXPECT_FALSE(r.to_json(false).at("complete").get<bool>());

  s = spec(TheoremId::thm_2_structure, product_family(5, SampleMode::exhaustive, 0, {}));
  s.time_limit = std::chrono::milliseconds(0);
  r = run_sweep(s);
  EXPECT_FALSE(r.complete);
  EXPECT_LT(r.counts.instances, r.planned_instances);
}

TEST(SweepTest, ProgressIsReported) {
  SweepSpec s = spec(TheoremId::cauchy_davenport, ResiduePairsFamily{7}, 2);
  std::mutex m;
  std::vector<std::uint64_t> done;
  s.on_progress = [&](const SweepProgress& p) {
    std::lock_guard lock(m);
    done.push_back(p.done);
    EXPECT_EQ(p.planned, 127u * 127u);
  };
  const SweepReport r = run_sweep(s);
  ASSERT_FALSE(done.empty());
  EXPECT_EQ(done.back(), r.counts.instances);
  EXPECT_TRUE(std::is_sorted(done.begin(), done.end()));
}

TEST(SweepTest, ReportSchema) {
  const SweepReport r = run_sweep(spec(TheoremId::thm_4_prem1, BoxSubsetsFamily{GroupSpec::heisenberg(), 1, 3, 3}));
  const nlohmann::json j = r.to_json(true);
  EXPECT_EQ(j.at("schema_version"), 1);
  EXPECT_EQ(j.at("theorem"), "thm_4_prem1");
  EXPECT_TRUE(j.at("timing").contains("wall_time_ms"));
  EXPECT_FALSE(r.to_json(false).contains("timing"));
  const auto& w = j.at("counts").at("window_readings");
  EXPECT_EQ(w.at("literal").get<std::uint64_t>() + w.at("relaxed").get<std::uint64_t>() +
                w.at("neither").get<std::uint64_t>(),
            r.counts.hypothesis_met);

  const std::string csv = r.to_csv(false);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "schema_version,theorem,family,seed,planned_instances,instances,hypothesis_met,holds,vacuous,"
            "counterexamples,complete,counterexample_instances");
}

TEST(SweepTest, ProductSweepCrossChecksTheoremOne) {
  const SweepReport r = run_sweep(spec(TheoremId::thm_2_structure, product_family(2, SampleMode::exhaustive, 0, {})));
  EXPECT_TRUE(r.ok());
  EXPECT_GT(r.counts.hypothesis_met, 0u);
  EXPECT_EQ(r.counts.cross_checked, r.counts.hypothesis_met);
  EXPECT_EQ(r.counts.cross_check_failures, 0u);
}

TEST(SweepTest, WorkerDefaultFollowsEnvironment) {
  ::setenv("SUMSETLAB_WORKERS", "3", 1);
  EXPECT_EQ(default_workers(), 3u);
  ::unsetenv("SUMSETLAB_WORKERS");
  EXPECT_GE(default_workers(), 1u);
}

}  // namespace
}  // namespace sumsetlab
