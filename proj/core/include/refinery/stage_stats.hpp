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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace refinery {

// Per-stage in/out counters. Per-worker instances merge by summation.
struct StageStats {
  std::string stage;
  std::uint64_t docs_in = 0;
  std::uint64_t docs_out = 0;
  std::optional<std::uint64_t> tokens_in;
  std::optional<std::uint64_t> tokens_out;
  std::uint64_t bytes_in = 0;
  std::uint64_t bytes_out = 0;
  // Documents removed for an unparsable URL or a malformed input record;
  // these carry no RejectReason.
  std::uint64_t malformed = 0;

  std::uint64_t removed() const noexcept { return docs_in - docs_out; }

  // Adds `other` into this. Stage names must agree.
  void Merge(const StageStats& other);

  bool operator==(const StageStats&) const = default;
};

struct KeptRate {
  std::string stage;
  double step_kept_rate = 0.0;
  double cumulative_kept_rate = 0.0;
};

// docs_out/docs_in per stage and the running product. Throws ChainBroken if
// docs_in of a stage differs from docs_out of the previous one.
std::vector<KeptRate> KeptRates(std::span<const StageStats> stats);

// Same semantics over token counts; stages without token counts are skipped.
// Token chains are not required to link.
std::vector<KeptRate> TokenKeptRates(std::span<const StageStats> stats);

}  // namespace refinery
