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

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace refinery {

// ---------------------------------------------------------------------------
// Normalization and shingling
// ---------------------------------------------------------------------------

// Lowercases, decomposes (NFD), drops combining marks and punctuation, then
// splits on whitespace.
std::vector<std::string> NormalizeForDedup(std::string_view text);

// Tokens joined by single spaces.
std::string JoinTokens(const std::vector<std::string>& tokens);

// Unique space-joined n-token windows, sorted. Fewer than n tokens yield one
// shingle holding all of them; no tokens yield an empty set.
std::vector<std::string> ShingleSet(const std::vector<std::string>& tokens, std::size_t n);

// ---------------------------------------------------------------------------
// MinHash
// ---------------------------------------------------------------------------

struct MinHashParams {
  std::size_t n = 5;    // shingle size in tokens
  std::size_t b = 20;   // hashes per bucket
  std::size_t r = 450;  // buckets
  std::uint64_t seed = 0x5eed;

  std::size_t k() const { return b * r; }
  bool operator==(const MinHashParams&) const = default;
};

// Throws DomainError unless n, b and r are all positive.
void ValidateParams(const MinHashParams& params);

struct MinHashSignature {
  MinHashParams params;
  std::vector<std::uint32_t> values;
};

// Stable 64-bit hash of one shingle; the input to every h_i.
std::uint64_t ShingleHash(std::string_view shingle);

// Unique base hashes of the document's shingles, computed without
// materializing the shingle strings.
std::vector<std::uint64_t> ShingleHashes(const std::vector<std::string>& tokens, std::size_t n);

// k hash functions h_i(x) = high 32 bits of (a_i * x + c_i) mod 2^64 with
// odd a_i, all drawn from the seed.
class MinHasher {
 public:
  explicit MinHasher(const MinHashParams& params);

  const MinHashParams& params() const { return params_; }

  // Throws EmptyShingleSet when there is nothing to hash.
  MinHashSignature Sign(const std::vector<std::uint64_t>& shingle_hashes) const;
  MinHashSignature SignShingles(const std::vector<std::string>& shingles) const;
  MinHashSignature SignText(std::string_view text) const;

 private:
  MinHashParams params_;
  std::vector<std::uint64_t> mul_;
  std::vector<std::uint64_t> add_;
};

// Fraction of agreeing positions. Throws ParamMismatch on differing params.
double EstimateJaccard(const MinHashSignature& a, const MinHashSignature& b);

using BucketKey = std::array<std::uint64_t, 2>;

// r keys; key j hashes values[j*b, (j+1)*b). Keys are only compared within
// the same bucket.
std::vector<BucketKey> BucketKeys(const MinHashSignature& signature);

// 1 - (1 - s^b)^r. Throws DomainError for s outside [0,1] or b, r < 1.
double MatchProbability(double s, std::size_t b, std::size_t r);

// ---------------------------------------------------------------------------
// LSH index and clustering
// ---------------------------------------------------------------------------

// Document handles are dense indices [0, size()) in insertion order; callers
// keep the mapping to their own ids.
class LshIndex {
 public:
  explicit LshIndex(std::size_t buckets);

  std::size_t buckets() const { return tables_.size(); }
  std::size_t size() const { return size_; }

  // Returns the dense handle of the new document. Throws ParamMismatch when
  // the key count differs from buckets().
  std::uint32_t Add(const std::vector<BucketKey>& keys);

  // Calls fn(a, b) for each colliding pair (a, b) that is adjacent within a
  // bucket's sorted posting list. Sufficient for connected components.
  template <typename Fn>
  void ForEachLink(Fn&& fn) const;

 private:
  struct Entry {
    BucketKey key;
    std::uint32_t doc;
    bool operator<(const Entry& o) const { return key != o.key ? key < o.key : doc < o.doc; }
  };
  void Seal() const;

  mutable std::vector<std::vector<Entry>> tables_;
  mutable bool sealed_ = true;
  std::size_t size_ = 0;
};

template <typename Fn>
void LshIndex::ForEachLink(Fn&& fn) const {
  Seal();
  for (const auto& table : tables_) {
    for (std::size_t i = 1; i < table.size(); ++i) {
      if (table[i].key == table[i - 1].key) fn(table[i - 1].doc, table[i].doc);
    }
  }
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n);
  std::uint32_t Find(std::uint32_t x);
  void Union(std::uint32_t a, std::uint32_t b);
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> rank_;
};

// Connected components over dense handles. Each cluster is sorted ascending
// and clusters are ordered by their smallest member.
using DupClusters = std::vector<std::vector<std::uint32_t>>;

DupClusters ClusterDuplicates(const LshIndex& index);
// Same result from an explicit multiset of linked pairs.
DupClusters ClusterPairs(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs);

enum class SurvivorPolicy { kSmallestId, kSeededRandom };

// One survivor per cluster, returned sorted. `ids` gives the ordering key of
// each handle for kSmallestId (handles are used when empty).
std::vector<std::uint32_t> SelectSurvivors(const DupClusters& clusters, SurvivorPolicy policy, std::uint64_t seed = 0,
                                           const std::vector<std::string>& ids = {});

// ---------------------------------------------------------------------------
// Signature cache
// ---------------------------------------------------------------------------

struct SignatureRecord {
  std::string id;
  std::vector<std::uint32_t> values;
};

// Binary file: magic, params header, then (id, values) records.
void WriteSignatureCache(const std::filesystem::path& path, const MinHashParams& params,
                         const std::vector<SignatureRecord>& records);

struct SignatureCache {
  MinHashParams params;
  std::vector<SignatureRecord> records;
};

// Throws BadMagic, TruncatedRecord or ParamMismatch (value count != k).
SignatureCache ReadSignatureCache(const std::filesystem::path& path);

}  // namespace refinery
