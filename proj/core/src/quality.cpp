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

#include <cctype>
#include <string>

#include "refinery/quality_filter.hpp"
#include "refinery/resources.hpp"
#include "text_util.hpp"

namespace refinery {
namespace {

bool StartsWithBullet(std::string_view line) {
  for (std::string_view bullet : {std::string_view("• "), std::string_view("- "), std::string_view("* ")}) {
    if (line.substr(0, bullet.size()) == bullet) return true;
  }
  return false;
}

bool EndsWithEllipsis(std::string_view line) {
  return line.ends_with("...") || line.ends_with("…");
}

std::size_t CountSymbols(std::string_view word) {
  std::size_t count = 0;
  bool in_hash_run = false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] == '#') {
      if (!in_hash_run) ++count;
      in_hash_run = true;
      continue;
    }
    in_hash_run = false;
    if (word.compare(i, 3, "...") == 0) {
      ++count;
      i += 2;
    } else if (word.compare(i, 3, "…") == 0) {
      ++count;
      i += 2;
    }
  }
  return count;
}

// Lowercased word with leading and trailing punctuation removed.
std::string StopwordKey(std::string_view word) {
  std::string lower = unicode::ToLowerUtf8(word);
  std::size_t begin = 0;
  std::size_t end = lower.size();
  while (begin < end && std::ispunct(static_cast<unsigned char>(lower[begin]))) ++begin;
  while (end > begin && std::ispunct(static_cast<unsigned char>(lower[end - 1]))) --end;
  return lower.substr(begin, end - begin);
}

}  // namespace

QualityProfile ComputeQualityProfile(std::string_view text, const std::unordered_set<std::string>& stopwords) {
  QualityProfile profile;
  const std::vector<std::string_view> words = text::SplitWords(text);
  profile.word_count = words.size();
  if (!words.empty()) {
    std::size_t chars = 0;
    std::size_t symbols = 0;
    std::size_t alpha_words = 0;
    for (std::string_view word : words) {
      chars += unicode::CountScalars(word);
      symbols += CountSymbols(word);
      bool has_alpha = false;
      for (std::size_t pos = 0; pos < word.size() && !has_alpha;) {
        has_alpha = unicode::IsAlphabetic(unicode::DecodeNext(word, pos));
      }
      if (has_alpha) ++alpha_words;
      if (stopwords.count(StopwordKey(word)) != 0) ++profile.stopword_hits;
    }
    const auto n = static_cast<double>(words.size());
    profile.mean_word_length = static_cast<double>(chars) / n;
    profile.symbol_word_ratio = static_cast<double>(symbols) / n;
    profile.alpha_word_frac = static_cast<double>(alpha_words) / n;
  }

  std::size_t lines = 0;
  std::size_t bullets = 0;
  std::size_t ellipses = 0;
  for (std::string_view raw : text::SplitLines(text)) {
    const std::string_view line = text::Trim(raw);
    if (line.empty()) continue;
    ++lines;
    if (StartsWithBullet(line)) ++bullets;
    if (EndsWithEllipsis(line)) ++ellipses;
  }
  if (lines != 0) {
    profile.bullet_line_frac = static_cast<double>(bullets) / static_cast<double>(lines);
    profile.ellipsis_line_frac = static_cast<double>(ellipses) / static_cast<double>(lines);
  }
  return profile;
}

QualityProfile ComputeQualityProfile(std::string_view text) {
  return ComputeQualityProfile(text, resources::EnglishStopwords());
}

Verdict QualityGate(const QualityProfile& p, const QualityThresholds& t) {
  const bool ok = p.word_count >= t.min_words && p.word_count <= t.max_words &&
                  p.mean_word_length >= t.min_mean_word_length && p.mean_word_length <= t.max_mean_word_length &&
                  p.symbol_word_ratio <= t.max_symbol_word_ratio && p.bullet_line_frac <= t.max_bullet_line_frac &&
                  p.ellipsis_line_frac <= t.max_ellipsis_line_frac && p.alpha_word_frac >= t.min_alpha_word_frac &&
                  p.stopword_hits >= t.min_stopword_hits;
  return ok ? Verdict::Keep() : Verdict::Reject(RejectReason::kQuality);
}

}  // namespace refinery
