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

#include <benchmark/benchmark.h>

#include <random>
#include <string_view>
#include <vector>

#include "bench_input.hpp"
#include "refinery/exact_dedup.hpp"
#include "refinery/fuzzy_dedup.hpp"

namespace refinery {
namespace {

void BM_NormalizeAndShingle(benchmark::State& state) {
  const std::string text = bench::Prose(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    auto hashes = ShingleHashes(NormalizeForDedup(text), 5);
    benchmark::DoNotOptimize(hashes);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_NormalizeAndShingle)->Arg(200)->Arg(2000);

// Full 9000-permutation signature; dominates fuzzy dedup cost.
void BM_MinHashSign(benchmark::State& state) {
  const MinHasher hasher(MinHashParams{});
  const auto hashes = ShingleHashes(NormalizeForDedup(bench::Prose(static_cast<std::size_t>(state.range(0)), 2)), 5);
  for (auto _ : state) {
    auto sig = hasher.Sign(hashes);
    benchmark::DoNotOptimize(sig);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * hashes.size()));
}
BENCHMARK(BM_MinHashSign)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_BucketKeys(benchmark::State& state) {
  const MinHasher hasher(MinHashParams{});
  const auto sig = hasher.Sign(ShingleHashes(NormalizeForDedup(bench::Prose(500, 3)), 5));
  for (auto _ : state) {
    auto keys = BucketKeys(sig);
    benchmark::DoNotOptimize(keys);
  }
}
BENCHMARK(BM_BucketKeys);

void BM_SuffixArray(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::vector<std::uint32_t> seq(static_cast<std::size_t>(state.range(0)));
  for (auto& x : seq) x = 1 + static_cast<std::uint32_t>(rng() % 5000);
  for (auto _ : state) {
    auto sa = BuildSuffixArray(seq);
    benchmark::DoNotOptimize(sa);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * seq.size()));
}
BENCHMARK(BM_SuffixArray)->Range(1 << 10, 1 << 20)->Unit(benchmark::kMillisecond);

void BM_FindDuplicateRanges(benchmark::State& state) {
  std::vector<std::string> docs;
  for (std::uint64_t i = 0; i < 200; ++i) docs.push_back(bench::Prose(300, 100 + i % 150));
  const std::vector<std::string_view> views(docs.begin(), docs.end());
  for (auto _ : state) {
    const TokenizedCorpus corpus = TokenizeReversible(views);
    auto ranges = FindDuplicateRanges(corpus, 50);
    benchmark::DoNotOptimize(ranges);
  }
}
BENCHMARK(BM_FindDuplicateRanges)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace refinery
