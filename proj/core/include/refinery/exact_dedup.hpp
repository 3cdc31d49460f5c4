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
#include <string_view>
#include <vector>

namespace refinery {

// Byte range [begin, end) into a document's UTF-8 content. Boundaries always
// fall on scalar-value boundaries.
struct CharSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool operator==(const CharSpan&) const = default;
};

struct TokenOrigin {
  std::uint32_t doc = 0;
  CharSpan span;
};

// Documents tokenized with the dedup normalization and concatenated with one
// separator between consecutive documents.
struct TokenizedCorpus {
  static constexpr std::uint32_t kSeparator = 0;

  std::vector<std::uint32_t> token_ids;
  // Per document, [first, last) token positions in token_ids.
  std::vector<std::pair<std::size_t, std::size_t>> doc_spans;
  // Parallel to token_ids; separator slots hold a default origin.
  std::vector<TokenOrigin> origins;
  // id -> token text; index 0 is the separator and holds "".
  std::vector<std::string> vocabulary;

  std::size_t alphabet_size() const { return vocabulary.size(); }
};

// Normalizing tokenizer that records the source span of every token. Slicing
// a document at a token's span and normalizing again yields that token.
TokenizedCorpus TokenizeReversible(const std::vector<std::string_view>& docs);

// Suffix array by SA-IS. Shorter suffixes sort before their extensions.
std::vector<std::uint32_t> BuildSuffixArray(std::span<const std::uint32_t> seq);
std::vector<std::uint32_t> BuildSuffixArray(std::string_view bytes);

// lcp[i] = common prefix length of suffixes sa[i-1] and sa[i]; lcp[0] = 0.
std::vector<std::uint32_t> BuildLcpArray(std::span<const std::uint32_t> seq, std::span<const std::uint32_t> sa);

struct DuplicateRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool operator==(const DuplicateRange&) const = default;
};

// Positions covered by a separator-free window of at least min_match tokens
// that occurs two or more times anywhere in seq (overlapping occurrences
// count). Returned merged, sorted and disjoint.
std::vector<DuplicateRange> FindDuplicateRanges(std::span<const std::uint32_t> seq, std::uint32_t separator,
                                                std::size_t min_match);
std::vector<DuplicateRange> FindDuplicateRanges(const TokenizedCorpus& corpus, std::size_t min_match);

// Per document, sorted disjoint byte spans covering the duplicated tokens.
// Consecutive duplicated tokens yield one span including the text between
// them.
std::vector<std::vector<CharSpan>> MapRangesToChars(const TokenizedCorpus& corpus,
                                                    const std::vector<DuplicateRange>& ranges);

enum class DedupStrategy { kCut, kMask, kDropPartial, kDropAny };

std::string_view StrategyName(DedupStrategy strategy);
std::optional<DedupStrategy> ParseStrategy(std::string_view name);

struct StrategyOptions {
  double drop_partial_threshold = 0.20;
  std::size_t min_remaining_chars = 20;
};

struct StrategyResult {
  bool dropped = false;
  std::string content;
  // Mask only: the duplicated spans, for loss masking downstream.
  std::vector<CharSpan> loss_mask;
};

// Character counts are in scalar values. Throws InvalidSpans on unsorted,
// overlapping, out-of-bounds or misaligned spans.
StrategyResult ApplyStrategy(std::string_view content, const std::vector<CharSpan>& spans, DedupStrategy strategy,
                             const StrategyOptions& options = {});

}  // namespace refinery
