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
#include <array>
#include <cctype>
#include <optional>

#include "refinery/text_extract.hpp"
#include "refinery/unicode.hpp"

namespace refinery {
namespace {

constexpr std::array<std::string_view, 3> kUrlPrefixes = {"https://", "http://", "www."};

bool StartsWithIgnoreCase(std::string_view text, std::size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > text.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(text[pos + i])) != prefix[i]) return false;
  }
  return true;
}

bool IsTrailingPunct(char32_t cp) {
  switch (cp) {
    case '.': case ',': case ';': case ':': case '!': case '?':
    case ')': case ']': case '}': case '"': case '\'':
    case 0x00BB:  // »
    case 0x201D:  // ”
    case 0x2019:  // ’
      return true;
    default:
      return false;
  }
}

// Byte length of the URL starting at `pos`, if one starts there.
std::optional<std::size_t> UrlAt(std::string_view text, std::size_t pos) {
  for (std::string_view prefix : kUrlPrefixes) {
    if (!StartsWithIgnoreCase(text, pos, prefix)) continue;
    const std::size_t body_start = pos + prefix.size();
    std::size_t end = body_start;
    // End of the last scalar that is not trailing punctuation.
    std::size_t keep_end = body_start;
    while (end < text.size()) {
      std::size_t next = end;
      const char32_t cp = unicode::DecodeNext(text, next);
      if (unicode::IsWhitespace(cp)) break;
      if (!IsTrailingPunct(cp)) keep_end = next;
      end = next;
    }
    if (keep_end == body_start) return std::nullopt;
    return keep_end - pos;
  }
  return std::nullopt;
}

std::string RemoveUrls(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (c == 'h' || c == 'H' || c == 'w' || c == 'W') {
      if (auto len = UrlAt(text, pos)) {
        pos += *len;
        continue;
      }
    }
    out.push_back(c);
    ++pos;
  }
  return out;
}

// Length of `line` without trailing whitespace.
std::size_t TrimmedLength(std::string_view line) {
  std::size_t keep = 0;
  for (std::size_t pos = 0; pos < line.size();) {
    const char32_t cp = unicode::DecodeNext(line, pos);
    if (!unicode::IsWhitespace(cp)) keep = pos;
  }
  return keep;
}

}  // namespace

bool ContainsUrl(std::string_view text) {
  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    const char c = text[pos];
    if ((c == 'h' || c == 'H' || c == 'w' || c == 'W') && UrlAt(text, pos)) return true;
  }
  return false;
}

std::string FormatText(std::string_view text) {
  const std::string no_urls = RemoveUrls(text);
  std::string out;
  out.reserve(no_urls.size());
  std::size_t newline_run = 0;
  std::size_t start = 0;
  const std::string_view view = no_urls;
  while (start <= view.size()) {
    std::size_t nl = view.find('\n', start);
    const bool last = nl == std::string_view::npos;
    if (last) nl = view.size();
    const std::string_view line = view.substr(start, nl - start);
    const std::size_t len = TrimmedLength(line);
    if (len > 0) {
      out.append(line.substr(0, len));
      newline_run = 0;
    }
    if (last) break;
    if (newline_run < 2) out.push_back('\n');
    ++newline_run;
    start = nl + 1;
  }
  return out;
}

}  // namespace refinery
