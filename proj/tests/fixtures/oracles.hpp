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

#pragma once

// Slow, obviously-correct reference implementations. Tests compare the
// library against these; none of them share code with the library.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "refinery/exact_dedup.hpp"

namespace refinery::oracle {

// Sorts all suffixes with std::lexicographical_compare.
std::vector<std::uint32_t> NaiveSuffixArray(std::span<const std::uint32_t> seq);

// Counts every separator-free window of exactly min_match tokens in a map and
// marks the positions of windows seen twice or more.
std::vector<DuplicateRange> BruteForceDuplicateRanges(std::span<const std::uint32_t> seq, std::uint32_t separator,
                                                      std::size_t min_match);

// Repetition fractions over whitespace-separated words, by enumeration.
double NaiveTopNgramCharFrac(std::string_view text, int n);
double NaiveDupNgramCharFrac(std::string_view text, int n);

// True if host equals an entry or ends with "." + entry.
bool NaiveDomainBlocked(std::string_view host, const std::unordered_set<std::string>& entries);

// Two sets of distinct 64-bit elements with |A ∪ B| = union_size and
// |A ∩ B| = intersection, so J(A, B) = intersection / union_size.
struct SetPair {
  std::vector<std::uint64_t> a;
  std::vector<std::uint64_t> b;
};
SetPair MakeSetPair(std::mt19937_64& rng, std::size_t union_size, std::size_t intersection);

// Exact Jaccard of two sets.
double Jaccard(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b);

// 1 - (1 - s^b)^r by repeated multiplication.
double NaiveMatchProbability(double s, std::size_t b, std::size_t r);

}  // namespace refinery::oracle
