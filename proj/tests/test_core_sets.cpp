#include "sumsetlab/core_sets.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sumsetlab/error.hpp"

namespace sumsetlab {
namespace {

oracle::Vec vec(const IntSet& s) { return {s.begin(), s.end()}; }
IntSet set(const oracle::Vec& v) { return IntSet(std::vector<Int>(v.begin(), v.end())); }

// Sets in [0, hi] containing 0 with gcd 1, plus {0} itself.
std::vector<oracle::Vec> normalized_subsets(long long hi) {
  std::vector<oracle::Vec> out;
  for (auto& s : oracle::subsets_of_range(0, hi)) {
    if (s.front() != 0) continue;
    if (s.size() == 1 || oracle::gcd_of(s) == 1) out.push_back(std::move(s));
  }
  return out;
}

TEST(IntSetTest, SortsAndDeduplicates) {
  IntSet s{5, 1, 3, 1};
  EXPECT_EQ(vec(s), (oracle::Vec{1, 3, 5}));
  EXPECT_EQ(s.to_string(), "{1,3,5}");
  EXPECT_THROW(IntSet(std::vector<Int>{}), DegenerateInputError);
  EXPECT_THROW(IntSet::from_sorted({1, 1}), MalformedInputError);
}

TEST(SumsetTest, Examples) {
  EXPECT_EQ(sumset({0, 1, 2}, {0, 1, 2}), (IntSet{0, 1, 2, 3, 4}));
  EXPECT_EQ(sumset({0}, {0, 7}), (IntSet{0, 7}));
  const IntSet s = sumset({0, 1, 3}, {0, 1, 3});
  EXPECT_EQ(vec(s), oracle::sumset({0, 1, 3}, {0, 1, 3}));
  EXPECT_EQ(s.size(), 6u);
}

TEST(SumsetTest, DifferenceSetExamples) {
  EXPECT_EQ(difference_set({0, 1}, {0, 1}), (IntSet{-1, 0, 1}));
  EXPECT_EQ(vec(difference_set({0, 1, 2}, {0, 1})), oracle::diffset({0, 1, 2}, {0, 1}));
  EXPECT_EQ(difference_set({5}, {5}), (IntSet{0}));
}

TEST(SumsetTest, OverflowIsReported) {
  const Int big = std::numeric_limits<Int>::max();
  EXPECT_THROW(sumset({big}, {1}), OverflowError);
  EXPECT_THROW(difference_set({std::numeric_limits<Int>::min()}, {1}), OverflowError);
}

TEST(SumsetTest, CommutativeAndTranslationCovariant) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Int> value(-40, 40), size(1, 8), shift(-100, 100);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Int> a(size(rng)), b(size(rng));
    for (auto& x : a) x = value(rng);
    for (auto& x : b) x = value(rng);
    const IntSet A(a), B(b);
    const Int t = shift(rng);
    EXPECT_EQ(sumset(A, B), sumset(B, A));
    EXPECT_EQ(sumset(A.translated(t), B), sumset(A, B).translated(t));
    EXPECT_EQ(vec(sumset(A, B)), oracle::sumset(vec(A), vec(B)));
  }
}

// |A+B| >= |A|+|B|-1 with equality exactly for AP pairs with one difference.
TEST(SumsetTest, LowerBoundAndEqualityCaseExhaustive) {
  const auto sets = normalized_subsets(10);
  std::size_t equality_cases = 0;
  for (const auto& a : sets) {
    const IntSet A = set(a);
    for (const auto& b : sets) {
      const IntSet B = set(b);
      const std::size_t n = sumset(A, B).size();
      ASSERT_GE(n + 1, a.size() + b.size());
      if (a.size() < 2 || b.size() < 2) continue;
      const bool equal = n + 1 == a.size() + b.size();
      const bool ap_pair = oracle::is_ap(a) && oracle::is_ap(b) && a[1] - a[0] == b[1] - b[0];
      ASSERT_EQ(equal, ap_pair) << A.to_string() << " " << B.to_string();
      ASSERT_EQ(is_ap_pair_with_common_difference(A, B).has_value(), ap_pair);
      equality_cases += equal;
    }
  }
  EXPECT_GT(equality_cases, 0u);
}

TEST(NormalizeTest, Examples) {
  Normalized n = normalize({3, 5, 7});
  EXPECT_EQ(n.set, (IntSet{0, 1, 2}));
  EXPECT_EQ(n.map, (NormalizationMap{3, 2}));

  n = normalize({0, 1, 2});
  EXPECT_EQ(n.set, (IntSet{0, 1, 2}));
  EXPECT_EQ(n.map, (NormalizationMap{0, 1}));

  n = normalize({10, 16, 28});
  EXPECT_EQ(n.set, (IntSet{0, 1, 3}));
  EXPECT_EQ(n.map, (NormalizationMap{10, 6}));

  EXPECT_THROW(normalize({4}), DegenerateInputError);
}

TEST(NormalizeTest, IdempotentAndInvertible) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Int> value(-1000, 1000), size(2, 9), scale(1, 12);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Int> raw(size(rng));
    const Int m = scale(rng);
    for (auto& x : raw) x = value(rng) * m;
    const IntSet A(raw);
    if (A.size() < 2) continue;
    const Normalized n = normalize(A);
    EXPECT_EQ(n.set.min(), 0);
    EXPECT_EQ(oracle::gcd_of(vec(n.set)), 1);
    EXPECT_TRUE(is_normalized(n.set));
    EXPECT_EQ(normalize(n.set).set, n.set);
    EXPECT_EQ(normalize(n.set).map, NormalizationMap{});
    EXPECT_EQ(n.map.invert(n.set), A);
  }
}

TEST(StatsTest, Examples) {
  SumsetStats s = stats({0, 1, 2, 3, 4});
  EXPECT_EQ(s.b, 0);
  EXPECT_EQ(s.R, 2);
  EXPECT_EQ(s.sumset_size, 9u);

  s = stats({0, 1, 2});
  EXPECT_EQ(s.doubling, (Rational{5, 3}));
  EXPECT_EQ(s.doubling.to_string(), "5/3");

  s = stats({0, 1, 3});
  EXPECT_EQ(s.k, 3u);
  EXPECT_EQ(s.sumset_size, 6u);
  EXPECT_EQ(s.b, 1);
  EXPECT_EQ(s.R, 3);
  EXPECT_EQ(static_cast<Int>(2 * s.k) + s.R - 3, 6);

  EXPECT_THROW(stats({1, 2, 3}), PreconditionError);
  EXPECT_THROW(stats({0, 2, 4}), PreconditionError);
}

TEST(StatsTest, BoundsOverNormalizedSets) {
  for (const auto& a : normalized_subsets(12)) {
    if (a.size() < 2) continue;
    const SumsetStats s = stats(set(a));
    const long long k = static_cast<long long>(a.size());
    ASSERT_EQ(static_cast<long long>(s.sumset_size), static_cast<long long>(oracle::sumset(a, a).size()));
    ASSERT_GE(s.b, 0);
    ASSERT_LE(s.R, k);
    ASSERT_GE(s.R, 2);
    ASSERT_EQ(s.R, std::min(a.back() - k + 3, k));
  }
}

TEST(ApTest, Examples) {
  EXPECT_EQ(minimal_containing_ap({0, 1, 3}), (APDescription{0, 1, 4}));
  EXPECT_EQ(minimal_containing_ap({0, 2, 4, 6}), (APDescription{0, 2, 4}));
  EXPECT_EQ(minimal_containing_ap({0, 1, 2, 3, 4, 5}), (APDescription{0, 1, 6}));
  EXPECT_THROW(minimal_containing_ap({3}), DegenerateInputError);

  EXPECT_EQ(is_ap_pair_with_common_difference({0, 3, 6}, {1, 4}), std::optional<Int>(3));
  EXPECT_EQ(is_ap_pair_with_common_difference({0, 1, 3}, {0, 1}), std::nullopt);
}

TEST(ApTest, MatchesBruteForceSearch) {
  for (const auto& a : oracle::subsets_of_range(-3, 9)) {
    if (a.size() < 2) continue;
    const IntSet A = set(a);
    const APDescription ap = minimal_containing_ap(A);
    ASSERT_EQ(ap.length, oracle::shortest_ap_length(a)) << A.to_string();
    ASSERT_TRUE(ap.contains(A));
    ASSERT_GE(ap.length, static_cast<Int>(a.size()));
    ASSERT_EQ(ap.length == static_cast<Int>(a.size()), oracle::is_ap(a));
    ASSERT_EQ(is_ap(A), oracle::is_ap(a));
  }
}

TEST(ApTest, YesInstancesMeetEqualityBound) {
  for (Int d = 1; d <= 4; ++d) {
    for (Int len_a = 2; len_a <= 5; ++len_a) {
      for (Int len_b = 2; len_b <= 5; ++len_b) {
        std::vector<Int> a, b;
        for (Int i = 0; i < len_a; ++i) a.push_back(7 + i * d);
        for (Int i = 0; i < len_b; ++i) b.push_back(-2 + i * d);
        const IntSet A(a), B(b);
        ASSERT_EQ(is_ap_pair_with_common_difference(A, B), std::optional<Int>(d));
        EXPECT_EQ(oracle::sumset(vec(A), vec(B)).size(), a.size() + b.size() - 1);
      }
    }
  }
}

TEST(IsomorphismTest, Examples) {
  const std::vector<Int> affine{5, 7, 9};
  EXPECT_TRUE(check_2_isomorphism({0, 1, 2}, {5, 7, 9}, affine));
  const std::vector<Int> order_preserving{0, 1, 3};
  EXPECT_FALSE(check_2_isomorphism({0, 1, 2}, {0, 1, 3}, order_preserving));
  const std::vector<Int> identity{0, 1, 3, 4, 6};
  EXPECT_TRUE(check_2_isomorphism({0, 1, 3, 4, 6}, {0, 1, 3, 4, 6}, identity));

  const std::vector<Int> not_onto{5, 5, 9};
  EXPECT_THROW(check_2_isomorphism({0, 1, 2}, {5, 7, 9}, not_onto), MalformedInputError);
  const std::vector<Int> short_image{5, 7};
  EXPECT_THROW(check_2_isomorphism({0, 1, 2}, {5, 7, 9}, short_image), MalformedInputError);
}

TEST(IsomorphismTest, NormalizationIsAnIsomorphism) {
  for (const auto& a : oracle::subsets_of_range(0, 7)) {
    if (a.size() < 2) continue;
    const IntSet A = set(a);
    const Normalized n = normalize(A);
    std::vector<Int> image;
    for (Int x : A) image.push_back(n.map.apply(x));
    ASSERT_TRUE(check_2_isomorphism(A, n.set, image));
  }
}

TEST(JsonTest, RoundTrips) {
  const IntSet A{-3, 0, 8};
  EXPECT_EQ(to_json(A).dump(), "[-3,0,8]");
  EXPECT_EQ(int_set_from_json(to_json(A)), A);
  EXPECT_THROW(int_set_from_json(nlohmann::json::parse("[3,1]")), MalformedInputError);
  EXPECT_THROW(int_set_from_json(nlohmann::json::parse("[]")), MalformedInputError);

  const NormalizationMap m{10, 6};
  EXPECT_EQ(to_json(m).dump(), R"({"scale":6,"shift":10})");
  EXPECT_EQ(normalization_map_from_json(to_json(m)), m);
}

}  // namespace
}  // namespace sumsetlab
