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

#include "refinery/document.hpp"

#include <array>

#include "refinery/unicode.hpp"

namespace refinery {
namespace {

constexpr std::array<std::string_view, kRejectReasonCount> kNames = {
    "UrlBlocklisted", "UrlWordScore",         "UrlHqExcluded",  "ExtractionEmpty",
    "LanguageScore",  "LanguageMismatch",     "Repetition",     "Quality",
    "LineCorrectionBudget", "FuzzyDuplicate", "ExactDupResidue", "UrlRevisit",
};

}  // namespace

std::string_view RejectReasonName(RejectReason reason) {
  return kNames[static_cast<std::size_t>(reason)];
}

std::optional<RejectReason> ParseRejectReason(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<RejectReason>(i);
  }
  return std::nullopt;
}

std::size_t Document::char_count() const { return unicode::CountScalars(content); }

}  // namespace refinery
