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

#include <sodium.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "refinery/error.hpp"
#include "refinery/fuzzy_dedup.hpp"

namespace refinery {
namespace {

// Fixed SipHash keys so hashes are stable across runs and builds.
constexpr unsigned char kShingleKey[crypto_shorthash_siphash24_KEYBYTES] = {
    0x72, 0x65, 0x66, 0x69, 0x6e, 0x65, 0x72, 0x79, 0x2d, 0x73, 0x68, 0x69, 0x6e, 0x67, 0x6c, 0x65};
constexpr unsigned char kBucketKey[crypto_shorthash_siphashx24_KEYBYTES] = {
    0x72, 0x65, 0x66, 0x69, 0x6e, 0x65, 0x72, 0x79, 0x2d, 0x62, 0x75, 0x63, 0x6b, 0x65, 0x74, 0x73};

std::uint64_t LoadLe64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

#if defined(__x86_64__) && defined(__GNUC__)
#define REFINERY_MULTIVERSION __attribute__((target_clones("arch=skylake-avx512", "avx2", "default")))
#else
#define REFINERY_MULTIVERSION
#endif

REFINERY_MULTIVERSION
void UpdateMins(std::uint32_t* __restrict mins, const std::uint64_t* __restrict mul, const std::uint64_t* __restrict add,
                std::size_t k, std::uint64_t x) {
  for (std::size_t i = 0; i < k; ++i) {
    const auto v = static_cast<std::uint32_t>((mul[i] * x + add[i]) >> 32);
    mins[i] = v < mins[i] ? v : mins[i];
  }
}

}  // namespace

void ValidateParams(const MinHashParams& params) {
  if (params.n == 0 || params.b == 0 || params.r == 0) {
    throw Error(ErrorCode::kDomainError, "minhash parameters n, b and r must be positive");
  }
}

std::uint64_t ShingleHash(std::string_view shingle) {
  unsigned char out[crypto_shorthash_siphash24_BYTES];
  crypto_shorthash_siphash24(out, reinterpret_cast<const unsigned char*>(shingle.data()), shingle.size(), kShingleKey);
  return LoadLe64(out);
}

std::vector<std::uint64_t> ShingleHashes(const std::vector<std::string>& tokens, std::size_t n) {
  std::vector<std::uint64_t> hashes;
  if (tokens.empty()) return hashes;
  if (n == 0) n = 1;
  const std::size_t width = std::min(n, tokens.size());
  std::string buf;
  for (std::size_t i = 0; i + width <= tokens.size(); ++i) {
    buf.clear();
    for (std::size_t j = 0; j < width; ++j) {
      if (j != 0) buf.push_back(' ');
      buf += tokens[i + j];
    }
    hashes.push_back(ShingleHash(buf));
  }
  std::sort(hashes.begin(), hashes.end());
  hashes.erase(std::unique(hashes.begin(), hashes.end()), hashes.end());
  return hashes;
}

MinHasher::MinHasher(const MinHashParams& params) : params_(params) {
  ValidateParams(params);
  std::mt19937_64 rng(params.seed);
  mul_.resize(params.k());
  add_.resize(params.k());
  for (std::size_t i = 0; i < params.k(); ++i) {
    mul_[i] = rng() | 1ULL;
    add_[i] = rng();
  }
}

MinHashSignature MinHasher::Sign(const std::vector<std::uint64_t>& shingle_hashes) const {
  if (shingle_hashes.empty()) throw Error(ErrorCode::kEmptyShingleSet, "cannot sign an empty shingle set");
  MinHashSignature sig;
  sig.params = params_;
  sig.values.assign(params_.k(), std::numeric_limits<std::uint32_t>::max());
  for (std::uint64_t x : shingle_hashes) UpdateMins(sig.values.data(), mul_.data(), add_.data(), params_.k(), x);
  return sig;
}

MinHashSignature MinHasher::SignShingles(const std::vector<std::string>& shingles) const {
  std::vector<std::uint64_t> hashes;
  hashes.reserve(shingles.size());
  for (const std::string& s : shingles) hashes.push_back(ShingleHash(s));
  std::sort(hashes.begin(), hashes.end());
  hashes.erase(std::unique(hashes.begin(), hashes.end()), hashes.end());
  return Sign(hashes);
}

MinHashSignature MinHasher::SignText(std::string_view text) const {
  return Sign(ShingleHashes(NormalizeForDedup(text), params_.n));
}

double EstimateJaccard(const MinHashSignature& a, const MinHashSignature& b) {
  if (!(a.params == b.params) || a.values.size() != b.values.size()) {
    throw Error(ErrorCode::kParamMismatch, "signatures were computed with different parameters");
  }
  if (a.values.empty()) return 0.0;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) agree += a.values[i] == b.values[i] ? 1 : 0;
  return static_cast<double>(agree) / static_cast<double>(a.values.size());
}

std::vector<BucketKey> BucketKeys(const MinHashSignature& signature) {
  const std::size_t b = signature.params.b;
  const std::size_t r = signature.params.r;
  if (signature.values.size() != b * r) {
    throw Error(ErrorCode::kParamMismatch, "signature length does not match b * r");
  }
  std::vector<BucketKey> keys(r);
  std::vector<unsigned char> slice(b * 4);
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t i = 0; i < b; ++i) {
      const std::uint32_t v = signature.values[j * b + i];
      for (int byte = 0; byte < 4; ++byte) slice[i * 4 + static_cast<std::size_t>(byte)] = (v >> (8 * byte)) & 0xff;
    }
    unsigned char out[crypto_shorthash_siphashx24_BYTES];
    crypto_shorthash_siphashx24(out, slice.data(), slice.size(), kBucketKey);
    keys[j] = {LoadLe64(out), LoadLe64(out + 8)};
  }
  return keys;
}

double MatchProbability(double s, std::size_t b, std::size_t r) {
  if (!(s >= 0.0 && s <= 1.0)) throw Error(ErrorCode::kDomainError, "similarity must lie in [0, 1]");
  if (b < 1 || r < 1) throw Error(ErrorCode::kDomainError, "b and r must be at least 1");
  if (s == 0.0) return 0.0;
  if (s == 1.0) return 1.0;
  const double per_bucket = std::pow(s, static_cast<double>(b));
  return -std::expm1(static_cast<double>(r) * std::log1p(-per_bucket));
}

}  // namespace refinery
