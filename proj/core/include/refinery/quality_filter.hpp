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

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "refinery/document.hpp"

namespace refinery {

// ---------------------------------------------------------------------------
// Repetition
// ---------------------------------------------------------------------------

// Lines are '\n'-separated and trimmed, empty ones ignored. Paragraphs are
// runs of non-empty lines separated by blank lines. Words are maximal runs of
// non-whitespace; character fractions over words use the sum of word lengths
// (in scalar values) as the denominator, counting every covered word once.
struct RepetitionProfile {
  double dup_line_frac = 0.0;
  double dup_para_frac = 0.0;
  double dup_line_char_frac = 0.0;
  double dup_para_char_frac = 0.0;
  // Index n-2 for n in {2,3,4}: characters covered by the most frequent
  // n-gram (only if it occurs at least twice).
  std::array<double, 3> top_ngram_char_frac{};
  // Index n-5 for n in {5..10}: characters covered by all n-grams that occur
  // at least twice.
  std::array<double, 6> dup_ngram_char_frac{};

  double top_ngram(int n) const { return top_ngram_char_frac.at(static_cast<std::size_t>(n - 2)); }
  double dup_ngram(int n) const { return dup_ngram_char_frac.at(static_cast<std::size_t>(n - 5)); }
};

struct RepetitionThresholds {
  double dup_line_frac = 0.30;
  double dup_para_frac = 0.30;
  double dup_line_char_frac = 0.20;
  double dup_para_char_frac = 0.20;
  std::array<double, 3> top_ngram_char_frac = {0.20, 0.18, 0.16};
  std::array<double, 6> dup_ngram_char_frac = {0.15, 0.14, 0.13, 0.12, 0.11, 0.10};
};

RepetitionProfile ComputeRepetitionProfile(std::string_view text);
// Rejects iff any field strictly exceeds its threshold.
Verdict RepetitionGate(const RepetitionProfile& profile, const RepetitionThresholds& thresholds);

// ---------------------------------------------------------------------------
// Quality heuristics
// ---------------------------------------------------------------------------

struct QualityProfile {
  std::size_t word_count = 0;
  double mean_word_length = 0.0;
  // ('#' runs + "..." + "…") / words.
  double symbol_word_ratio = 0.0;
  double bullet_line_frac = 0.0;
  double ellipsis_line_frac = 0.0;
  double alpha_word_frac = 0.0;
  std::size_t stopword_hits = 0;
};

struct QualityThresholds {
  std::size_t min_words = 50;
  std::size_t max_words = 100000;
  double min_mean_word_length = 3.0;
  double max_mean_word_length = 10.0;
  double max_symbol_word_ratio = 0.10;
  double max_bullet_line_frac = 0.90;
  double max_ellipsis_line_frac = 0.30;
  double min_alpha_word_frac = 0.80;
  std::size_t min_stopword_hits = 2;
};

QualityProfile ComputeQualityProfile(std::string_view text, const std::unordered_set<std::string>& stopwords);
QualityProfile ComputeQualityProfile(std::string_view text);  // bundled English stop words
// All bounds inclusive.
Verdict QualityGate(const QualityProfile& profile, const QualityThresholds& thresholds);

// ---------------------------------------------------------------------------
// Line-wise corrections
// ---------------------------------------------------------------------------

enum class PatternPosition { kStart, kEnd, kAnywhere };

struct LinePattern {
  PatternPosition position;
  std::string text;  // lowercase
};

struct LineRuleSet {
  bool discard_uppercase = true;
  bool discard_numeric = true;
  bool discard_counter = true;
  bool discard_single_word = true;
  std::unordered_set<std::string> engagement_words;
  std::vector<LinePattern> patterns;
  std::size_t max_words_for_patterns = 10;
  double doc_discard_budget = 0.05;

  // Bundled defaults.
  static LineRuleSet Default();
};

// Parses "start:", "end:" and "any:" prefixed lines; '#' starts a comment.
std::vector<LinePattern> ParseLinePatterns(std::string_view text);

enum class LineFlag { kNone, kUppercase, kNumeric, kCounter, kSingleWord, kPattern };

LineFlag ClassifyLine(std::string_view line, const LineRuleSet& rules);

struct LineCorrection {
  bool rejected = false;
  std::string content;  // input with flagged lines removed (unset when rejected)
  std::size_t total_words = 0;
  std::size_t flagged_words = 0;
  std::vector<std::size_t> removed_lines;  // zero-based line indices
};

// Flags lines, then rejects the document when flagged words exceed
// doc_discard_budget * total words. Otherwise flagged lines are dropped and
// the rest kept verbatim.
LineCorrection CorrectLines(std::string_view text, const LineRuleSet& rules);

}  // namespace refinery
