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

#include <cstddef>
#include <string>
#include <string_view>

namespace refinery::unicode {

inline constexpr char32_t kReplacement = 0xFFFD;

// Decodes one scalar value starting at `pos` and advances `pos`. Invalid or
// truncated sequences decode to U+FFFD and consume a single byte.
char32_t DecodeNext(std::string_view text, std::size_t& pos) noexcept;

void AppendUtf8(std::string& out, char32_t cp);

// Number of Unicode scalar values, counting each invalid byte as one.
std::size_t CountScalars(std::string_view text) noexcept;

bool IsValidUtf8(std::string_view text) noexcept;

// Replaces every invalid sequence with U+FFFD.
std::string SanitizeUtf8(std::string_view text);

bool IsWhitespace(char32_t cp) noexcept;
bool IsPunctuation(char32_t cp) noexcept;
bool IsAlphabetic(char32_t cp) noexcept;
bool IsUppercase(char32_t cp) noexcept;
bool IsDigit(char32_t cp) noexcept;
char32_t ToLower(char32_t cp) noexcept;

std::string ToLowerUtf8(std::string_view text);

// Dedup folding of a single scalar value: lowercase, canonical decomposition,
// then combining marks and punctuation dropped. Appends the surviving scalars
// (possibly none) to `out`. Whitespace is not handled here.
void AppendDedupFolded(std::string& out, char32_t cp);

}  // namespace refinery::unicode
