// Copyright 2026 The Refinery Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "refinery/error.hpp"
#include "refinery/fuzzy_dedup.hpp"
#include "testing.hpp"

namespace refinery {
namespace {

template <typename Fn>
ErrorCode CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIoError;
}

MinHashSignature Sig(MinHashParams params, std::vector<std::uint32_t> values) {
  return MinHashSignature{params, std::move(values)};
}

// ---------------------------------------------------------------------------
// Normalization and shingles
// ---------------------------------------------------------------------------

TEST(NormalizeForDedupTest, FoldsCaseAccentsAndPunctuation) {
  EXPECT_EQ(NormalizeForDedup("Café, NAÏVE!  résumé\n\t-- ok"),
            (std::vector<std::string>{"cafe", "naive", "resume", "ok"}));
  EXPECT_TRUE(NormalizeForDedup(" ... !!! ").empty());
  EXPECT_EQ(JoinTokens({"a", "b", "c"}), "a b c");
}

TEST(ShingleSetTest, WindowsAndShortInputs) {
  EXPECT_EQ(ShingleSet({"a", "b", "c", "a", "b", "c"}, 2), (std::vector<std::string>{"a b", "b c", "c a"}));
  EXPECT_EQ(ShingleSet({"x", "y"}, 5), (std::vector<std::string>{"x y"}));
  EXPECT_TRUE(ShingleSet({}, 5).empty());
}

TEST(ShingleHashesTest, MatchHashesOfMaterializedShingles) {
  testing::EnglishTextGenerator gen(9);
  for (std::size_t words : {0, 1, 3, 4, 5, 6, 50, 400}) {
    const auto tokens = NormalizeForDedup(gen.Text(words));
    for (std::size_t n : {1, 3, 5}) {
      std::set<std::uint64_t> expected;
      for (const std::string& s : ShingleSet(tokens, n)) expected.insert(ShingleHash(s));
      const auto got = ShingleHashes(tokens, n);
      EXPECT_EQ(std::set<std::uint64_t>(got.begin(), got.end()), expected);
      EXPECT_EQ(got.size(), expected.size());
    }
  }
}

// ---------------------------------------------------------------------------
// MinHash
// ---------------------------------------------------------------------------

TEST(MinHashTest, ParamsValidated) {
  EXPECT_EQ(CodeOf([] { ValidateParams({0, 20, 450, 1}); }), ErrorCode::kDomainError);
  EXPECT_EQ(CodeOf([] { ValidateParams({5, 0, 450, 1}); }), ErrorCode::kDomainError);
  EXPECT_EQ(CodeOf([] { ValidateParams({5, 20, 0, 1}); }), ErrorCode::kDomainError);
  EXPECT_EQ(MinHashParams{}.k(), 9000u);
}

TEST(MinHashTest, SignatureIsASetFunction) {
  const MinHasher hasher(MinHashParams{});
  std::vector<std::uint64_t> hashes = {5, 99, 1234567890123ull, 42, 7};
  const MinHashSignature sig = hasher.Sign(hashes);
  EXPECT_EQ(sig.values.size(), 9000u);
  std::vector<std::uint64_t> shuffled = {42, 7, 7, 1234567890123ull, 5, 99, 5};
  EXPECT_EQ(hasher.Sign(shuffled).values, sig.values);
  EXPECT_EQ(CodeOf([&] { hasher.Sign({}); }), ErrorCode::kEmptyShingleSet);
  EXPECT_EQ(CodeOf([&] { hasher.SignText("!!!"); }), ErrorCode::kEmptyShingleSet);
}

TEST(MinHashTest, SeedDeterminesFamily) {
  const std::vector<std::uint64_t> hashes = {1, 2, 3, 4, 5, 6, 7, 8};
  MinHashParams p;
  EXPECT_EQ(MinHasher(p).Sign(hashes).values, MinHasher(p).Sign(hashes).values);
  MinHashParams q = p;
  q.seed = 0x5eee;
  EXPECT_NE(MinHasher(p).Sign(hashes).values, MinHasher(q).Sign(hashes).values);
}

TEST(MinHashTest, SubsetSignatureIsPointwiseNotSmaller) {
  // min over a superset can only be smaller or equal.
  const MinHasher hasher(MinHashParams{5, 4, 16, 3});
  const auto small = hasher.Sign({10, 20, 30});
  const auto big = hasher.Sign({10, 20, 30, 40, 50});
  for (std::size_t i = 0; i < small.values.size(); ++i) EXPECT_LE(big.values[i], small.values[i]);
}

TEST(MinHashTest, JaccardEstimateWithinThreeSigma) {
  const MinHasher hasher(MinHashParams{});
  std::mt19937_64 rng(17);
  for (std::size_t inter : {0, 50, 100, 150, 200}) {
    const auto pair = oracle::MakeSetPair(rng, 200, inter);
    const double j = oracle::Jaccard(pair.a, pair.b);
    ASSERT_DOUBLE_EQ(j, static_cast<double>(inter) / 200.0);
    const double est = EstimateJaccard(hasher.Sign(pair.a), hasher.Sign(pair.b));
    const double sigma = std::sqrt(j * (1 - j) / 9000.0);
    EXPECT_LE(std::abs(est - j), 3 * sigma + 1e-12) << "J=" << j;
  }
}

TEST(MinHashTest, EstimateRejectsMismatchedParams) {
  MinHashParams p{5, 2, 2, 1};
  MinHashParams q = p;
  q.seed = 2;
  EXPECT_EQ(CodeOf([&] { EstimateJaccard(Sig(p, {1, 2, 3, 4}), Sig(q, {1, 2, 3, 4})); }), ErrorCode::kParamMismatch);
  EXPECT_DOUBLE_EQ(EstimateJaccard(Sig(p, {1, 2, 3, 4}), Sig(p, {1, 9, 3, 9})), 0.5);
}

TEST(MinHashTest, NearDuplicateTextsEstimateHigh) {
  const MinHasher hasher(MinHashParams{});
  const std::string text = testing::CleanEnglishText();
  std::string edited = text;
  edited.insert(edited.find("hedge."), "tall ");
  const double est = EstimateJaccard(hasher.SignText(text), hasher.SignText(edited));
  EXPECT_GT(est, 0.9);
  EXPECT_LT(est, 1.0);
}

// ---------------------------------------------------------------------------
// Bucketing and the S-curve
// ---------------------------------------------------------------------------

TEST(BucketKeysTest, OneKeyPerBucketAndLocalChanges) {
  const MinHashParams p{5, 3, 4, 1};
  const std::vector<std::uint32_t> v = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  const auto keys = BucketKeys(Sig(p, v));
  ASSERT_EQ(keys.size(), 4u);
  EXPECT_EQ(std::set<BucketKey>(keys.begin(), keys.end()).size(), 4u);
  auto changed = v;
  changed[7] = 99;  // bucket 2
  const auto keys2 = BucketKeys(Sig(p, changed));
  for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(keys[j] == keys2[j], j != 2) << j;
}

TEST(MatchProbabilityTest, AgreesWithProductForm) {
  for (std::size_t b : {1, 2, 5, 20}) {
    for (std::size_t r : {1, 10, 450}) {
      for (double s = 0.0; s <= 1.0; s += 0.05) {
        EXPECT_NEAR(MatchProbability(s, b, r), oracle::NaiveMatchProbability(s, b, r), 1e-9);
      }
    }
  }
}

TEST(MatchProbabilityTest, DefaultCurveValues) {
  // Frozen from the product form to six places.
  EXPECT_NEAR(MatchProbability(0.8, 20, 450), 0.994583, 5e-7);
  EXPECT_NEAR(MatchProbability(0.75, 20, 450), 0.760527, 5e-7);
  EXPECT_EQ(MatchProbability(0.0, 20, 450), 0.0);
  EXPECT_EQ(MatchProbability(1.0, 20, 450), 1.0);
  double prev = 0;
  for (double s = 0.01; s <= 1.0; s += 0.01) {
    const double p = MatchProbability(s, 20, 450);
    EXPECT_GE(p, prev);
    prev = p;
  }
}

TEST(MatchProbabilityTest, DomainErrors) {
  EXPECT_EQ(CodeOf([] { MatchProbability(-0.1, 20, 450); }), ErrorCode::kDomainError);
  EXPECT_EQ(CodeOf([] { MatchProbability(1.1, 20, 450); }), ErrorCode::kDomainError);
  EXPECT_EQ(CodeOf([] { MatchProbability(0.5, 0, 450); }), ErrorCode::kDomainError);
  EXPECT_EQ(CodeOf([] { MatchProbability(0.5, 20, 0); }), ErrorCode::kDomainError);
  EXPECT_EQ(CodeOf([] { MatchProbability(std::nan(""), 20, 450); }), ErrorCode::kDomainError);
}

// ---------------------------------------------------------------------------
// LSH and clustering
// ---------------------------------------------------------------------------

TEST(UnionFindTest, MergesComponents) {
  UnionFind uf(6);
  uf.Union(0, 1);
  uf.Union(3, 4);
  uf.Union(1, 4);
  EXPECT_EQ(uf.Find(0), uf.Find(3));
  EXPECT_NE(uf.Find(2), uf.Find(0));
  EXPECT_NE(uf.Find(5), uf.Find(2));
}

TEST(LshIndexTest, ClustersMatchAllPairsCollisions) {
  const MinHashParams p{5, 2, 6, 1};
  std::mt19937_64 rng(23);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 40)(rng);
    const std::uint32_t alphabet = std::uniform_int_distribution<std::uint32_t>(2, 6)(rng);
    LshIndex index(p.r);
    std::vector<std::vector<BucketKey>> keys;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::uint32_t> v(p.k());
      for (auto& x : v) x = static_cast<std::uint32_t>(rng() % alphabet);
      keys.push_back(BucketKeys(Sig(p, v)));
      EXPECT_EQ(index.Add(keys.back()), i);
    }
    // Every pair sharing any bucket key is linked.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = a + 1; b < n; ++b) {
        for (std::size_t j = 0; j < p.r; ++j) {
          if (keys[a][j] == keys[b][j]) {
            pairs.emplace_back(a, b);
            break;
          }
        }
      }
    }
    EXPECT_EQ(ClusterDuplicates(index), ClusterPairs(n, pairs));
  }
}

TEST(LshIndexTest, WrongKeyCountIsParamMismatch) {
  LshIndex index(3);
  EXPECT_EQ(CodeOf([&] { index.Add(std::vector<BucketKey>(2)); }), ErrorCode::kParamMismatch);
}

TEST(ClusterPairsTest, OrderedClusters) {
  const DupClusters c = ClusterPairs(7, {{5, 2}, {4, 1}, {2, 6}, {1, 4}});
  EXPECT_EQ(c, (DupClusters{{0}, {1, 4}, {2, 5, 6}, {3}}));
}

TEST(SurvivorsTest, SmallestIdUsesIdOrder) {
  const DupClusters c = {{0, 3}, {1, 2}, {4}};
  EXPECT_EQ(SelectSurvivors(c, SurvivorPolicy::kSmallestId), (std::vector<std::uint32_t>{0, 1, 4}));
  const std::vector<std::string> ids = {"d/9", "d/1", "d/0", "d/2", "d/5"};
  EXPECT_EQ(SelectSurvivors(c, SurvivorPolicy::kSmallestId, 0, ids), (std::vector<std::uint32_t>{2, 3, 4}));
}

TEST(SurvivorsTest, SeededRandomIsDeterministicMember) {
  DupClusters c;
  for (std::uint32_t i = 0; i < 50; ++i) c.push_back({3 * i, 3 * i + 1, 3 * i + 2});
  const auto a = SelectSurvivors(c, SurvivorPolicy::kSeededRandom, 7);
  EXPECT_EQ(a, SelectSurvivors(c, SurvivorPolicy::kSeededRandom, 7));
  ASSERT_EQ(a.size(), 50u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i] / 3, i);
  EXPECT_NE(a, SelectSurvivors(c, SurvivorPolicy::kSeededRandom, 8));
  EXPECT_NE(a, SelectSurvivors(c, SurvivorPolicy::kSmallestId));
}

// ---------------------------------------------------------------------------
// Signature cache
// ---------------------------------------------------------------------------

TEST(SignatureCacheTest, RoundTrip) {
  testing::TempDir dir;
  const MinHashParams p{3, 2, 3, 77};
  const std::vector<SignatureRecord> records = {{"a/1", {1, 2, 3, 4, 5, 6}}, {"", {0, 0, 0, 0, 0, 0}},
                                                {"ünï", {9, 8, 7, 6, 5, 4294967295u}}};
  WriteSignatureCache(dir / "sig.bin", p, records);
  const SignatureCache cache = ReadSignatureCache(dir / "sig.bin");
  EXPECT_EQ(cache.params, p);
  ASSERT_EQ(cache.records.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(cache.records[i].id, records[i].id);
    EXPECT_EQ(cache.records[i].values, records[i].values);
  }
}

TEST(SignatureCacheTest, Errors) {
  testing::TempDir dir;
  const MinHashParams p{3, 2, 3, 77};
  testing::WriteFile(dir / "junk.bin", "definitely not a cache");
  EXPECT_EQ(CodeOf([&] { ReadSignatureCache(dir / "junk.bin"); }), ErrorCode::kBadMagic);

  WriteSignatureCache(dir / "sig.bin", p, {{"a", {1, 2, 3, 4, 5, 6}}});
  std::string bytes = testing::ReadFile(dir / "sig.bin");
  testing::WriteFile(dir / "cut.bin", bytes.substr(0, bytes.size() - 3));
  EXPECT_EQ(CodeOf([&] { ReadSignatureCache(dir / "cut.bin"); }), ErrorCode::kTruncatedRecord);

  EXPECT_EQ(CodeOf([&] { WriteSignatureCache(dir / "bad.bin", p, {{"a", {1, 2, 3}}}); }), ErrorCode::kParamMismatch);
  EXPECT_EQ(CodeOf([&] { ReadSignatureCache(dir / "missing.bin"); }), ErrorCode::kIoError);
}

}  // namespace
}  // namespace refinery
