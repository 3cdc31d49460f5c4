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

#include "refinery/error.hpp"
#include "refinery/quality_filter.hpp"
#include "refinery/resources.hpp"
#include "text_util.hpp"

namespace refinery {
namespace {

std::string_view StripAsciiPunct(std::string_view s) {
  while (!s.empty() && std::ispunct(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::ispunct(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// "3", "1,204", "2.5k", "10M".
bool IsCounterNumber(std::string_view token) {
  if (!token.empty() && (token.back() == 'k' || token.back() == 'm')) token.remove_suffix(1);
  if (token.empty() || !std::isdigit(static_cast<unsigned char>(token.front()))) return false;
  for (char c : token) {
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.' && c != ',') return false;
  }
  return std::isdigit(static_cast<unsigned char>(token.back())) != 0;
}

// One or more "[number] engagement-word" groups and nothing else.
bool IsCounterLine(const std::vector<std::string_view>& words, const std::unordered_set<std::string>& engagement) {
  std::vector<std::string> tokens;
  for (std::string_view w : words) {
    const std::string lower = unicode::ToLowerUtf8(w);
    const std::string_view stripped = StripAsciiPunct(lower);
    if (!stripped.empty()) tokens.emplace_back(stripped);
  }
  if (tokens.empty()) return false;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (IsCounterNumber(tokens[i])) ++i;
    if (i >= tokens.size() || engagement.count(tokens[i]) == 0) return false;
    ++i;
  }
  return true;
}

bool IsNumericLine(std::string_view line) {
  bool any = false;
  for (std::size_t pos = 0; pos < line.size();) {
    const char32_t cp = unicode::DecodeNext(line, pos);
    if (unicode::IsWhitespace(cp)) continue;
    if (!unicode::IsDigit(cp) && !unicode::IsPunctuation(cp)) return false;
    any = true;
  }
  return any;
}

bool IsUppercaseLine(std::string_view line) {
  std::size_t alpha = 0;
  std::size_t upper = 0;
  for (std::size_t pos = 0; pos < line.size();) {
    const char32_t cp = unicode::DecodeNext(line, pos);
    if (!unicode::IsAlphabetic(cp)) continue;
    ++alpha;
    if (unicode::IsUppercase(cp)) ++upper;
  }
  return alpha != 0 && 2 * upper > alpha;
}

bool MatchesPattern(std::string_view line, const std::vector<LinePattern>& patterns) {
  const std::string lower = unicode::ToLowerUtf8(line);
  std::string_view tail = lower;
  while (!tail.empty() && (std::ispunct(static_cast<unsigned char>(tail.back())) || tail.back() == ' ')) {
    tail.remove_suffix(1);
  }
  if (tail.ends_with("…")) tail.remove_suffix(3);
  for (const LinePattern& p : patterns) {
    switch (p.position) {
      case PatternPosition::kStart:
        if (std::string_view(lower).starts_with(p.text)) return true;
        break;
      case PatternPosition::kEnd:
        if (tail.ends_with(p.text)) return true;
        break;
      case PatternPosition::kAnywhere:
        if (lower.find(p.text) != std::string::npos) return true;
        break;
    }
  }
  return false;
}

}  // namespace

LineRuleSet LineRuleSet::Default() {
  LineRuleSet rules;
  rules.engagement_words = resources::EngagementWords();
  rules.patterns = resources::DefaultLinePatterns();
  return rules;
}

std::vector<LinePattern> ParseLinePatterns(std::string_view text) {
  std::vector<LinePattern> patterns;
  std::size_t line_no = 0;
  for (std::string_view raw : text::SplitLines(text)) {
    ++line_no;
    const std::string_view line = text::Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw Error(ErrorCode::kConfigError, "pattern line " + std::to_string(line_no) + ": missing position tag");
    }
    const std::string_view tag = line.substr(0, colon);
    const std::string body = unicode::ToLowerUtf8(text::Trim(line.substr(colon + 1)));
    PatternPosition pos;
    if (tag == "start") {
      pos = PatternPosition::kStart;
    } else if (tag == "end") {
      pos = PatternPosition::kEnd;
    } else if (tag == "any") {
      pos = PatternPosition::kAnywhere;
    } else {
      throw Error(ErrorCode::kConfigError,
                  "pattern line " + std::to_string(line_no) + ": unknown position '" + std::string(tag) + "'");
    }
    if (body.empty()) throw Error(ErrorCode::kConfigError, "pattern line " + std::to_string(line_no) + ": empty");
    patterns.push_back({pos, body});
  }
  return patterns;
}

LineFlag ClassifyLine(std::string_view raw, const LineRuleSet& rules) {
  const std::string_view line = text::Trim(raw);
  if (line.empty()) return LineFlag::kNone;
  const std::vector<std::string_view> words = text::SplitWords(line);
  if (rules.discard_uppercase && IsUppercaseLine(line)) return LineFlag::kUppercase;
  if (rules.discard_numeric && IsNumericLine(line)) return LineFlag::kNumeric;
  if (rules.discard_counter && IsCounterLine(words, rules.engagement_words)) return LineFlag::kCounter;
  if (rules.discard_single_word && words.size() == 1) return LineFlag::kSingleWord;
  if (words.size() <= rules.max_words_for_patterns && MatchesPattern(line, rules.patterns)) return LineFlag::kPattern;
  return LineFlag::kNone;
}

LineCorrection CorrectLines(std::string_view text, const LineRuleSet& rules) {
  LineCorrection result;
  const std::vector<std::string_view> lines = text::SplitLines(text);
  std::vector<bool> flagged(lines.size(), false);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t words = text::CountWords(lines[i]);
    result.total_words += words;
    if (ClassifyLine(lines[i], rules) != LineFlag::kNone) {
      flagged[i] = true;
      result.flagged_words += words;
      result.removed_lines.push_back(i);
    }
  }
  if (static_cast<double>(result.flagged_words) > rules.doc_discard_budget * static_cast<double>(result.total_words)) {
    result.rejected = true;
    return result;
  }
  bool first = true;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (flagged[i]) continue;
    if (!first) result.content.push_back('\n');
    result.content.append(lines[i]);
    first = false;
  }
  return result;
}

}  // namespace refinery
