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

#include "refinery/error.hpp"
#include "refinery/exact_dedup.hpp"
#include "refinery/unicode.hpp"

namespace refinery {

std::vector<DuplicateRange> FindDuplicateRanges(std::span<const std::uint32_t> seq, std::uint32_t separator,
                                                std::size_t min_match) {
  if (min_match == 0) throw Error(ErrorCode::kDomainError, "min_match must be at least 1");
  std::vector<DuplicateRange> ranges;
  const std::size_t n = seq.size();
  if (n == 0) return ranges;
  const std::vector<std::uint32_t> sa = BuildSuffixArray(seq);
  const std::vector<std::uint32_t> lcp = BuildLcpArray(seq, sa);

  // Longest prefix of suffix i that also starts some other suffix, cut at the
  // next separator.
  std::vector<std::uint32_t> repeat(n);
  for (std::size_t r = 0; r < n; ++r) {
    repeat[sa[r]] = std::max(lcp[r], r + 1 < n ? lcp[r + 1] : 0u);
  }
  std::size_t next_sep = n;
  for (std::size_t i = n; i-- > 0;) {
    if (seq[i] == separator) {
      next_sep = i;
      repeat[i] = 0;
      continue;
    }
    repeat[i] = static_cast<std::uint32_t>(std::min<std::size_t>(repeat[i], next_sep - i));
  }

  bool open = false;
  DuplicateRange current;
  for (std::size_t i = 0; i < n; ++i) {
    if (repeat[i] < min_match) continue;
    const std::size_t end = i + repeat[i];
    if (open && i <= current.end) {
      current.end = std::max(current.end, end);
    } else {
      if (open) ranges.push_back(current);
      current = {i, end};
      open = true;
    }
  }
  if (open) ranges.push_back(current);
  return ranges;
}

std::vector<DuplicateRange> FindDuplicateRanges(const TokenizedCorpus& corpus, std::size_t min_match) {
  return FindDuplicateRanges(corpus.token_ids, TokenizedCorpus::kSeparator, min_match);
}

std::vector<std::vector<CharSpan>> MapRangesToChars(const TokenizedCorpus& corpus,
                                                    const std::vector<DuplicateRange>& ranges) {
  std::vector<std::vector<CharSpan>> spans(corpus.doc_spans.size());
  for (const DuplicateRange& range : ranges) {
    if (range.begin >= range.end || range.end > corpus.token_ids.size()) {
      throw Error(ErrorCode::kInvalidSpans, "duplicate range outside the corpus");
    }
    const TokenOrigin& first = corpus.origins[range.begin];
    const TokenOrigin& last = corpus.origins[range.end - 1];
    for (std::size_t t = range.begin; t < range.end; ++t) {
      if (corpus.token_ids[t] == TokenizedCorpus::kSeparator) {
        throw Error(ErrorCode::kInvalidSpans, "duplicate range crosses a document boundary");
      }
    }
    auto& doc_spans = spans[first.doc];
    const CharSpan span{first.span.begin, last.span.end};
    if (!doc_spans.empty() && doc_spans.back().end >= span.begin) {
      doc_spans.back().end = std::max(doc_spans.back().end, span.end);
    } else {
      doc_spans.push_back(span);
    }
  }
  return spans;
}

std::string_view StrategyName(DedupStrategy strategy) {
  switch (strategy) {
    case DedupStrategy::kCut:
      return "cut";
    case DedupStrategy::kMask:
      return "mask";
    case DedupStrategy::kDropPartial:
      return "drop-partial";
    case DedupStrategy::kDropAny:
      return "drop-any";
  }
  return "cut";
}

std::optional<DedupStrategy> ParseStrategy(std::string_view name) {
  for (DedupStrategy s : {DedupStrategy::kCut, DedupStrategy::kMask, DedupStrategy::kDropPartial, DedupStrategy::kDropAny}) {
    if (StrategyName(s) == name) return s;
  }
  return std::nullopt;
}

namespace {

bool IsBoundary(std::string_view content, std::size_t pos) {
  return pos == content.size() || (static_cast<unsigned char>(content[pos]) & 0xC0) != 0x80;
}

}  // namespace

StrategyResult ApplyStrategy(std::string_view content, const std::vector<CharSpan>& spans, DedupStrategy strategy,
                             const StrategyOptions& options) {
  std::size_t prev_end = 0;
  std::size_t dup_chars = 0;
  bool any = false;
  for (const CharSpan& span : spans) {
    if (span.begin > span.end || span.end > content.size() || span.begin < prev_end) {
      throw Error(ErrorCode::kInvalidSpans, "spans must be sorted, disjoint and within the document");
    }
    if (!IsBoundary(content, span.begin) || !IsBoundary(content, span.end)) {
      throw Error(ErrorCode::kInvalidSpans, "span splits a UTF-8 sequence");
    }
    prev_end = span.end;
    dup_chars += unicode::CountScalars(content.substr(span.begin, span.end - span.begin));
    any = any || span.end > span.begin;
  }

  StrategyResult result;
  if (!any) {
    result.content = std::string(content);
    return result;
  }
  const std::size_t total_chars = unicode::CountScalars(content);
  const std::size_t remaining = total_chars - dup_chars;
  switch (strategy) {
    case DedupStrategy::kCut: {
      if (remaining < options.min_remaining_chars) {
        result.dropped = true;
        break;
      }
      std::size_t pos = 0;
      for (const CharSpan& span : spans) {
        result.content.append(content.substr(pos, span.begin - pos));
        pos = span.end;
      }
      result.content.append(content.substr(pos));
      break;
    }
    case DedupStrategy::kMask:
      if (remaining < options.min_remaining_chars) {
        result.dropped = true;
        break;
      }
      result.content = std::string(content);
      for (const CharSpan& span : spans) {
        if (span.end > span.begin) result.loss_mask.push_back(span);
      }
      break;
    case DedupStrategy::kDropPartial:
      if (static_cast<double>(dup_chars) > options.drop_partial_threshold * static_cast<double>(total_chars)) {
        result.dropped = true;
      } else {
        result.content = std::string(content);
      }
      break;
    case DedupStrategy::kDropAny:
      result.dropped = true;
      break;
  }
  return result;
}

}  // namespace refinery
