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
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "refinery/quality_filter.hpp"
#include "text_util.hpp"

namespace refinery {
namespace {

struct DupFractions {
  double count_frac = 0.0;
  double char_frac = 0.0;
};

// Fraction of items equal to an earlier item, by count and by characters.
DupFractions DuplicateFractions(const std::vector<std::string_view>& items) {
  if (items.empty()) return {};
  std::unordered_set<std::string_view> seen;
  std::size_t dup_count = 0;
  std::size_t dup_chars = 0;
  std::size_t total_chars = 0;
  for (std::string_view item : items) {
    const std::size_t chars = unicode::CountScalars(item);
    total_chars += chars;
    if (!seen.insert(item).second) {
      ++dup_count;
      dup_chars += chars;
    }
  }
  DupFractions f;
  f.count_frac = static_cast<double>(dup_count) / static_cast<double>(items.size());
  f.char_frac = total_chars == 0 ? 0.0 : static_cast<double>(dup_chars) / static_cast<double>(total_chars);
  return f;
}

std::uint64_t Mix(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

// 64-bit key for the n-gram of word ids starting at `i`.
std::uint64_t NgramKey(const std::vector<std::uint32_t>& ids, std::size_t i, int n) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(n);
  for (int k = 0; k < n; ++k) h = Mix(h ^ (ids[i + static_cast<std::size_t>(k)] + 0x632be59bd9b4e019ULL));
  return h;
}

}  // namespace

RepetitionProfile ComputeRepetitionProfile(std::string_view text) {
  RepetitionProfile profile;

  std::vector<std::string_view> lines;
  std::vector<std::string_view> paragraphs;
  {
    std::size_t para_start = std::string_view::npos;
    std::size_t para_end = 0;
    for (std::string_view raw : text::SplitLines(text)) {
      const std::string_view line = text::Trim(raw);
      if (!line.empty()) {
        lines.push_back(line);
        const std::size_t line_begin = static_cast<std::size_t>(line.data() - text.data());
        if (para_start == std::string_view::npos) para_start = line_begin;
        para_end = line_begin + line.size();
      } else if (para_start != std::string_view::npos) {
        paragraphs.push_back(text.substr(para_start, para_end - para_start));
        para_start = std::string_view::npos;
      }
    }
    if (para_start != std::string_view::npos) paragraphs.push_back(text.substr(para_start, para_end - para_start));
  }
  const DupFractions line_f = DuplicateFractions(lines);
  const DupFractions para_f = DuplicateFractions(paragraphs);
  profile.dup_line_frac = line_f.count_frac;
  profile.dup_line_char_frac = line_f.char_frac;
  profile.dup_para_frac = para_f.count_frac;
  profile.dup_para_char_frac = para_f.char_frac;

  const std::vector<std::string_view> words = text::SplitWords(text);
  if (words.empty()) return profile;
  std::vector<std::uint32_t> ids(words.size());
  std::vector<std::size_t> lengths(words.size());
  std::size_t total_chars = 0;
  {
    std::unordered_map<std::string_view, std::uint32_t> interned;
    for (std::size_t i = 0; i < words.size(); ++i) {
      ids[i] = interned.emplace(words[i], static_cast<std::uint32_t>(interned.size())).first->second;
      lengths[i] = unicode::CountScalars(words[i]);
      total_chars += lengths[i];
    }
  }

  std::vector<std::size_t> prefix(words.size() + 1, 0);
  for (std::size_t i = 0; i < words.size(); ++i) prefix[i + 1] = prefix[i] + lengths[i];

  for (int n = 2; n <= 10; ++n) {
    const auto un = static_cast<std::size_t>(n);
    if (words.size() < un) continue;
    const std::size_t windows = words.size() - un + 1;
    // (key, start) sorted so equal n-grams form contiguous runs of ascending starts.
    std::vector<std::pair<std::uint64_t, std::uint32_t>> grams(windows);
    for (std::size_t i = 0; i < windows; ++i) grams[i] = {NgramKey(ids, i, n), static_cast<std::uint32_t>(i)};
    std::sort(grams.begin(), grams.end());

    if (n <= 4) {
      // Most frequent n-gram; ties go to the one covering the most characters.
      std::size_t best_count = 1;
      std::size_t best_chars = 0;
      for (std::size_t g = 0; g < windows;) {
        std::size_t h = g;
        while (h < windows && grams[h].first == grams[g].first) ++h;
        const std::size_t count = h - g;
        if (count >= 2 && count >= best_count) {
          std::size_t chars = 0;
          std::size_t covered_to = 0;
          for (std::size_t k = g; k < h; ++k) {
            const std::size_t begin = std::max<std::size_t>(grams[k].second, covered_to);
            const std::size_t end = grams[k].second + un;
            if (end > begin) chars += prefix[end] - prefix[begin];
            covered_to = std::max(covered_to, end);
          }
          if (count > best_count || chars > best_chars) best_chars = chars;
          best_count = count;
        }
        g = h;
      }
      profile.top_ngram_char_frac[un - 2] =
          best_count < 2 ? 0.0 : static_cast<double>(best_chars) / static_cast<double>(total_chars);
    } else {
      std::vector<bool> covered(words.size(), false);
      for (std::size_t g = 0; g < windows;) {
        std::size_t h = g;
        while (h < windows && grams[h].first == grams[g].first) ++h;
        if (h - g >= 2) {
          for (std::size_t k = g; k < h; ++k) {
            std::fill_n(covered.begin() + static_cast<std::ptrdiff_t>(grams[k].second), un, true);
          }
        }
        g = h;
      }
      std::size_t chars = 0;
      for (std::size_t i = 0; i < words.size(); ++i) {
        if (covered[i]) chars += lengths[i];
      }
      profile.dup_ngram_char_frac[un - 5] = static_cast<double>(chars) / static_cast<double>(total_chars);
    }
  }
  return profile;
}

Verdict RepetitionGate(const RepetitionProfile& p, const RepetitionThresholds& t) {
  bool exceeded = p.dup_line_frac > t.dup_line_frac || p.dup_para_frac > t.dup_para_frac ||
                  p.dup_line_char_frac > t.dup_line_char_frac || p.dup_para_char_frac > t.dup_para_char_frac;
  for (std::size_t i = 0; i < p.top_ngram_char_frac.size(); ++i) {
    exceeded = exceeded || p.top_ngram_char_frac[i] > t.top_ngram_char_frac[i];
  }
  for (std::size_t i = 0; i < p.dup_ngram_char_frac.size(); ++i) {
    exceeded = exceeded || p.dup_ngram_char_frac[i] > t.dup_ngram_char_frac[i];
  }
  return exceeded ? Verdict::Reject(RejectReason::kRepetition) : Verdict::Keep();
}

}  // namespace refinery
