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
#include <cstdint>
#include <limits>

#include "refinery/error.hpp"
#include "refinery/exact_dedup.hpp"

namespace refinery {
namespace {

// SA-IS over s[0, n) with values in [0, k) and s[n-1] == 0 the unique
// smallest symbol.
template <typename Sym>
class Sais {
 public:
  Sais(const Sym* s, std::int32_t* sa, std::int32_t n, std::int32_t k) : s_(s), sa_(sa), n_(n), k_(k) {}

  void Run() {
    const std::int32_t n = n_;
    t_.assign(static_cast<std::size_t>(n), 0);
    t_[n - 1] = 1;
    if (n >= 2) t_[n - 2] = 0;
    for (std::int32_t i = n - 3; i >= 0; --i) {
      t_[i] = (s_[i] < s_[i + 1] || (s_[i] == s_[i + 1] && t_[i + 1] != 0)) ? 1 : 0;
    }

    // Stage 1: sort LMS substrings.
    Buckets(true);
    std::fill(sa_, sa_ + n, -1);
    for (std::int32_t i = 1; i < n; ++i) {
      if (IsLms(i)) sa_[--bkt_[s_[i]]] = i;
    }
    InduceL();
    InduceS();

    std::int32_t n1 = 0;
    for (std::int32_t i = 0; i < n; ++i) {
      if (IsLms(sa_[i])) sa_[n1++] = sa_[i];
    }
    std::fill(sa_ + n1, sa_ + n, -1);
    std::int32_t name = 0;
    std::int32_t prev = -1;
    for (std::int32_t i = 0; i < n1; ++i) {
      const std::int32_t pos = sa_[i];
      bool diff = false;
      for (std::int32_t d = 0; d < n; ++d) {
        if (prev == -1 || s_[pos + d] != s_[prev + d] || t_[pos + d] != t_[prev + d]) {
          diff = true;
          break;
        }
        if (d > 0 && (IsLms(pos + d) || IsLms(prev + d))) break;
      }
      if (diff) {
        ++name;
        prev = pos;
      }
      sa_[n1 + pos / 2] = name - 1;
    }
    for (std::int32_t i = n - 1, j = n - 1; i >= n1; --i) {
      if (sa_[i] >= 0) sa_[j--] = sa_[i];
    }

    // Stage 2: order the reduced string.
    std::int32_t* s1 = sa_ + n - n1;
    std::int32_t* sa1 = sa_;
    if (name < n1) {
      Sais<std::int32_t>(s1, sa1, n1, name).Run();
    } else {
      for (std::int32_t i = 0; i < n1; ++i) sa1[s1[i]] = i;
    }

    // Stage 3: induce the full order from the sorted LMS suffixes.
    Buckets(true);
    for (std::int32_t i = 1, j = 0; i < n; ++i) {
      if (IsLms(i)) s1[j++] = i;
    }
    for (std::int32_t i = 0; i < n1; ++i) sa1[i] = s1[sa1[i]];
    std::fill(sa_ + n1, sa_ + n, -1);
    for (std::int32_t i = n1 - 1; i >= 0; --i) {
      const std::int32_t j = sa_[i];
      sa_[i] = -1;
      sa_[--bkt_[s_[j]]] = j;
    }
    InduceL();
    InduceS();
  }

 private:
  bool IsLms(std::int32_t i) const { return i > 0 && t_[i] != 0 && t_[i - 1] == 0; }

  void Buckets(bool end) {
    bkt_.assign(static_cast<std::size_t>(k_), 0);
    for (std::int32_t i = 0; i < n_; ++i) ++bkt_[s_[i]];
    std::int32_t sum = 0;
    for (std::int32_t c = 0; c < k_; ++c) {
      sum += bkt_[c];
      bkt_[c] = end ? sum : sum - bkt_[c];
    }
  }

  void InduceL() {
    Buckets(false);
    for (std::int32_t i = 0; i < n_; ++i) {
      const std::int32_t j = sa_[i] - 1;
      if (j >= 0 && t_[j] == 0) sa_[bkt_[s_[j]]++] = j;
    }
  }

  void InduceS() {
    Buckets(true);
    for (std::int32_t i = n_ - 1; i >= 0; --i) {
      const std::int32_t j = sa_[i] - 1;
      if (j >= 0 && t_[j] != 0) sa_[--bkt_[s_[j]]] = j;
    }
  }

  const Sym* s_;
  std::int32_t* sa_;
  std::int32_t n_;
  std::int32_t k_;
  std::vector<std::uint8_t> t_;
  std::vector<std::int32_t> bkt_;
};

template <typename T>
std::vector<std::uint32_t> SuffixArrayOf(const T* data, std::size_t size) {
  if (size == 0) return {};
  if (size >= static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
    throw Error(ErrorCode::kDomainError, "sequence too long for a 32-bit suffix array");
  }
  // Shift symbols up by one and append the sentinel 0. Symbols are remapped
  // to their rank so the alphabet stays dense.
  std::vector<std::uint32_t> symbols(data, data + size);
  std::sort(symbols.begin(), symbols.end());
  symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
  const auto n = static_cast<std::int32_t>(size + 1);
  std::vector<std::int32_t> s(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < size; ++i) {
    s[i] = static_cast<std::int32_t>(std::lower_bound(symbols.begin(), symbols.end(), static_cast<std::uint32_t>(data[i])) -
                                     symbols.begin()) +
           1;
  }
  s[size] = 0;
  std::vector<std::int32_t> sa(static_cast<std::size_t>(n));
  Sais<std::int32_t>(s.data(), sa.data(), n, static_cast<std::int32_t>(symbols.size()) + 1).Run();
  return std::vector<std::uint32_t>(sa.begin() + 1, sa.end());
}

}  // namespace

std::vector<std::uint32_t> BuildSuffixArray(std::span<const std::uint32_t> seq) {
  return SuffixArrayOf(seq.data(), seq.size());
}

std::vector<std::uint32_t> BuildSuffixArray(std::string_view bytes) {
  return SuffixArrayOf(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size());
}

std::vector<std::uint32_t> BuildLcpArray(std::span<const std::uint32_t> seq, std::span<const std::uint32_t> sa) {
  const std::size_t n = seq.size();
  std::vector<std::uint32_t> lcp(n, 0);
  if (n == 0) return lcp;
  std::vector<std::uint32_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[sa[i]] = static_cast<std::uint32_t>(i);
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa[rank[i] - 1];
    while (i + h < n && j + h < n && seq[i + h] == seq[j + h]) ++h;
    lcp[rank[i]] = static_cast<std::uint32_t>(h);
    if (h > 0) --h;
  }
  return lcp;
}

}  // namespace refinery
