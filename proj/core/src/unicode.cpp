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

#include "refinery/unicode.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <array>
#include <unordered_map>

namespace refinery::unicode {
namespace {

struct AsciiTables {
  std::array<bool, 128> punct{};
  std::array<std::string, 128> folded{};

  AsciiTables() {
    for (char32_t c = 0; c < 128; ++c) {
      punct[c] = u_ispunct(static_cast<UChar32>(c));
      if (!punct[c] && !u_isUWhiteSpace(static_cast<UChar32>(c))) {
        char lower = static_cast<char>(c);
        if (lower >= 'A' && lower <= 'Z') lower = static_cast<char>(lower - 'A' + 'a');
        folded[c] = std::string(1, lower);
      }
    }
  }
};

const AsciiTables& Ascii() {
  static const AsciiTables tables;
  return tables;
}

std::string FoldSlow(char32_t cp) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfd = icu::Normalizer2::getNFDInstance(status);
  icu::UnicodeString src(static_cast<UChar32>(u_tolower(static_cast<UChar32>(cp))));
  icu::UnicodeString decomposed;
  if (U_SUCCESS(status)) {
    nfd->normalize(src, decomposed, status);
  }
  if (U_FAILURE(status)) decomposed = src;
  std::string out;
  for (int32_t i = 0; i < decomposed.length();) {
    UChar32 c = decomposed.char32At(i);
    i += U16_LENGTH(c);
    c = u_tolower(c);
    if (u_charType(c) == U_NON_SPACING_MARK) continue;
    if (u_ispunct(c) || u_isUWhiteSpace(c)) continue;
    AppendUtf8(out, static_cast<char32_t>(c));
  }
  return out;
}

}  // namespace

char32_t DecodeNext(std::string_view text, std::size_t& pos) noexcept {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  const unsigned char b0 = byte(pos);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  std::size_t len = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2; cp = b0 & 0x1F; min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3; cp = b0 & 0x0F; min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4; cp = b0 & 0x07; min = 0x10000;
  } else {
    ++pos;
    return kReplacement;
  }
  if (pos + len > text.size()) {
    ++pos;
    return kReplacement;
  }
  for (std::size_t i = 1; i < len; ++i) {
    const unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return kReplacement;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++pos;
    return kReplacement;
  }
  pos += len;
  return cp;
}

void AppendUtf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::size_t CountScalars(std::string_view text) noexcept {
  std::size_t count = 0;
  for (std::size_t pos = 0; pos < text.size();) {
    DecodeNext(text, pos);
    ++count;
  }
  return count;
}

bool IsValidUtf8(std::string_view text) noexcept {
  for (std::size_t pos = 0; pos < text.size();) {
    const std::size_t before = pos;
    if (DecodeNext(text, pos) == kReplacement) {
      // A literal U+FFFD is three bytes; an error always consumes one.
      if (pos - before == 1) return false;
    }
  }
  return true;
}

std::string SanitizeUtf8(std::string_view text) {
  if (IsValidUtf8(text)) return std::string(text);
  std::string out;
  out.reserve(text.size());
  for (std::size_t pos = 0; pos < text.size();) {
    AppendUtf8(out, DecodeNext(text, pos));
  }
  return out;
}

bool IsWhitespace(char32_t cp) noexcept {
  if (cp < 0x80) return cp == ' ' || (cp >= '\t' && cp <= '\r');
  return u_isUWhiteSpace(static_cast<UChar32>(cp));
}

bool IsPunctuation(char32_t cp) noexcept {
  if (cp < 0x80) return Ascii().punct[cp];
  return u_ispunct(static_cast<UChar32>(cp));
}

bool IsAlphabetic(char32_t cp) noexcept {
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
  return u_isUAlphabetic(static_cast<UChar32>(cp));
}

bool IsUppercase(char32_t cp) noexcept {
  if (cp < 0x80) return cp >= 'A' && cp <= 'Z';
  return u_isUUppercase(static_cast<UChar32>(cp));
}

bool IsDigit(char32_t cp) noexcept {
  if (cp < 0x80) return cp >= '0' && cp <= '9';
  return u_isdigit(static_cast<UChar32>(cp));
}

char32_t ToLower(char32_t cp) noexcept {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp - 'A' + 'a' : cp;
  return static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp)));
}

std::string ToLowerUtf8(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t pos = 0; pos < text.size();) {
    AppendUtf8(out, ToLower(DecodeNext(text, pos)));
  }
  return out;
}

void AppendDedupFolded(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += Ascii().folded[cp];
    return;
  }
  thread_local std::unordered_map<char32_t, std::string> cache;
  auto it = cache.find(cp);
  if (it == cache.end()) {
    it = cache.emplace(cp, FoldSlow(cp)).first;
  }
  out += it->second;
}

}  // namespace refinery::unicode
