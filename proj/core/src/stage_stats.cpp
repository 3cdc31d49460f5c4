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

#include "refinery/stage_stats.hpp"

#include "refinery/error.hpp"

namespace refinery {
namespace {

double Ratio(std::uint64_t out, std::uint64_t in) {
  if (in == 0) return 0.0;
  return static_cast<double>(out) / static_cast<double>(in);
}

std::optional<std::uint64_t> AddOptional(std::optional<std::uint64_t> a,
                                         std::optional<std::uint64_t> b) {
  if (!a) return b;
  if (!b) return a;
  return *a + *b;
}

}  // namespace

void StageStats::Merge(const StageStats& other) {
  if (stage != other.stage) {
    throw Error(ErrorCode::kChainBroken, "cannot merge stage '" + other.stage + "' into '" + stage + "'");
  }
  docs_in += other.docs_in;
  docs_out += other.docs_out;
  tokens_in = AddOptional(tokens_in, other.tokens_in);
  tokens_out = AddOptional(tokens_out, other.tokens_out);
  bytes_in += other.bytes_in;
  bytes_out += other.bytes_out;
  malformed += other.malformed;
}

std::vector<KeptRate> KeptRates(std::span<const StageStats> stats) {
  if (stats.empty()) throw Error(ErrorCode::kChainBroken, "no stages");
  std::vector<KeptRate> rates;
  rates.reserve(stats.size());
  const std::uint64_t first_in = stats.front().docs_in;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const StageStats& s = stats[i];
    if (s.docs_out > s.docs_in) {
      throw Error(ErrorCode::kChainBroken, "stage '" + s.stage + "' outputs more documents than it received");
    }
    if (i > 0 && s.docs_in != stats[i - 1].docs_out) {
      throw Error(ErrorCode::kChainBroken, "stage '" + s.stage + "' docs_in " + std::to_string(s.docs_in) +
                                               " != previous docs_out " + std::to_string(stats[i - 1].docs_out));
    }
    // With chained stages the product of step ratios telescopes to
    // docs_out / first docs_in, which is computed directly to stay exact.
    rates.push_back({s.stage, Ratio(s.docs_out, s.docs_in), Ratio(s.docs_out, first_in)});
  }
  return rates;
}

std::vector<KeptRate> TokenKeptRates(std::span<const StageStats> stats) {
  std::vector<KeptRate> rates;
  double cumulative = 1.0;
  for (const StageStats& s : stats) {
    if (!s.tokens_in || !s.tokens_out) continue;
    const double step = Ratio(*s.tokens_out, *s.tokens_in);
    cumulative *= step;
    rates.push_back({s.stage, step, cumulative});
  }
  return rates;
}

}  // namespace refinery
