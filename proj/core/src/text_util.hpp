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

#include <string_view>
#include <vector>

#include "refinery/unicode.hpp"

namespace refinery::text {

// Maximal runs of non-whitespace scalar values.
inline std::vector<std::string_view> SplitWords(std::string_view text) {
  std::vector<std::string_view> words;
  std::size_t pos = 0;
  std::size_t start = std::string_view::npos;
  while (pos < text.size()) {
    const std::size_t before = pos;
    const char32_t cp = unicode::DecodeNext(text, pos);
    if (unicode::IsWhitespace(cp)) {
      if (start != std::string_view::npos) {
        words.push_back(text.substr(start, before - start));
        start = std::string_view::npos;
      }
    } else if (start == std::string_view::npos) {
      start = before;
    }
  }
  if (start != std::string_view::npos) words.push_back(text.substr(start));
  return words;
}

inline std::size_t CountWords(std::string_view text) {
  std::size_t count = 0;
  bool in_word = false;
  for (std::size_t pos = 0; pos < text.size();) {
    const bool ws = unicode::IsWhitespace(unicode::DecodeNext(text, pos));
    if (!ws && !in_word) ++count;
    in_word = !ws;
  }
  return count;
}

inline std::string_view Trim(std::string_view text) {
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t next = begin;
    if (!unicode::IsWhitespace(unicode::DecodeNext(text, next))) break;
    begin = next;
  }
  std::size_t end = begin;
  for (std::size_t pos = begin; pos < text.size();) {
    const char32_t cp = unicode::DecodeNext(text, pos);
    if (!unicode::IsWhitespace(cp)) end = pos;
  }
  return text.substr(begin, end - begin);
}

// Splits on '\n'; a trailing newline yields a final empty line.
inline std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (true) {
    const std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

}  // namespace refinery::text
