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
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace refinery {

// Primary rejection reason, one per rejected document. The order follows the
// stages of the pipeline.
enum class RejectReason {
  kUrlBlocklisted,
  kUrlWordScore,
  kUrlHqExcluded,
  kExtractionEmpty,
  kLanguageScore,
  kLanguageMismatch,
  kRepetition,
  kQuality,
  kLineCorrectionBudget,
  kFuzzyDuplicate,
  kExactDupResidue,
  kUrlRevisit,
};

inline constexpr int kRejectReasonCount = 12;

std::string_view RejectReasonName(RejectReason reason);
std::optional<RejectReason> ParseRejectReason(std::string_view name);

// One web page's text plus provenance.
struct Document {
  std::string id;
  std::string url;
  std::string dump_id;
  std::uint32_t part_id = 0;
  std::string content;
  std::optional<std::uint64_t> token_count;
  // stage name -> verdict summary
  std::map<std::string, std::string> annotations;

  // Number of Unicode scalar values in `content`.
  std::size_t char_count() const;

  bool operator==(const Document&) const = default;
};

// Outcome of a gating stage.
class Verdict {
 public:
  static Verdict Keep() { return Verdict(std::nullopt); }
  static Verdict Reject(RejectReason reason) { return Verdict(reason); }

  bool kept() const noexcept { return !reason_.has_value(); }
  bool rejected() const noexcept { return reason_.has_value(); }
  // Only meaningful when rejected().
  RejectReason reason() const { return *reason_; }

  bool operator==(const Verdict&) const = default;

 private:
  explicit Verdict(std::optional<RejectReason> reason) : reason_(reason) {}
  std::optional<RejectReason> reason_;
};

}  // namespace refinery
