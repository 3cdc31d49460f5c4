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

#include <algorithm>
#include <numeric>
#include <random>

#include "refinery/error.hpp"
#include "refinery/fuzzy_dedup.hpp"

namespace refinery {

LshIndex::LshIndex(std::size_t buckets) : tables_(buckets) {
  if (buckets == 0) throw Error(ErrorCode::kDomainError, "LSH index needs at least one bucket");
}

std::uint32_t LshIndex::Add(const std::vector<BucketKey>& keys) {
  if (keys.size() != tables_.size()) {
    throw Error(ErrorCode::kParamMismatch, "expected " + std::to_string(tables_.size()) + " bucket keys, got " +
                                               std::to_string(keys.size()));
  }
  const auto doc = static_cast<std::uint32_t>(size_++);
  for (std::size_t j = 0; j < keys.size(); ++j) tables_[j].push_back({keys[j], doc});
  sealed_ = false;
  return doc;
}

void LshIndex::Seal() const {
  if (sealed_) return;
  for (auto& table : tables_) std::sort(table.begin(), table.end());
  sealed_ = true;
}

UnionFind::UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), 0u);
}

std::uint32_t UnionFind::Find(std::uint32_t x) {
  std::uint32_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    const std::uint32_t next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

void UnionFind::Union(std::uint32_t a, std::uint32_t b) {
  a = Find(a);
  b = Find(b);
  if (a == b) return;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
}

namespace {

DupClusters Components(UnionFind& uf) {
  const std::size_t n = uf.size();
  // Smallest member of each component, visited in ascending order, fixes the
  // output order independently of how the unions happened.
  std::vector<std::uint32_t> slot(n, UINT32_MAX);
  DupClusters clusters;
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t root = uf.Find(i);
    if (slot[root] == UINT32_MAX) {
      slot[root] = static_cast<std::uint32_t>(clusters.size());
      clusters.emplace_back();
    }
    clusters[slot[root]].push_back(i);
  }
  return clusters;
}

}  // namespace

DupClusters ClusterDuplicates(const LshIndex& index) {
  UnionFind uf(index.size());
  index.ForEachLink([&](std::uint32_t a, std::uint32_t b) { uf.Union(a, b); });
  return Components(uf);
}

DupClusters ClusterPairs(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
  UnionFind uf(n);
  for (const auto& [a, b] : pairs) {
    if (a >= n || b >= n) throw Error(ErrorCode::kDomainError, "pair references an unknown document");
    uf.Union(a, b);
  }
  return Components(uf);
}

std::vector<std::uint32_t> SelectSurvivors(const DupClusters& clusters, SurvivorPolicy policy, std::uint64_t seed,
                                           const std::vector<std::string>& ids) {
  std::vector<std::uint32_t> survivors;
  survivors.reserve(clusters.size());
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const auto& members = clusters[c];
    if (members.empty()) continue;
    if (policy == SurvivorPolicy::kSmallestId) {
      if (ids.empty()) {
        survivors.push_back(*std::min_element(members.begin(), members.end()));
      } else {
        survivors.push_back(*std::min_element(members.begin(), members.end(),
                                              [&](std::uint32_t a, std::uint32_t b) { return ids.at(a) < ids.at(b); }));
      }
    } else {
      // Seeded per cluster by its smallest member so the choice does not
      // depend on how many clusters precede it.
      std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (members.front() + 1ULL)));
      survivors.push_back(members[rng() % members.size()]);
    }
  }
  std::sort(survivors.begin(), survivors.end());
  return survivors;
}

}  // namespace refinery
