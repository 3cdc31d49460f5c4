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

#include <string>
#include <string_view>

#include "refinery/unicode.hpp"

namespace refinery::detail {

// Calls fn(token, begin, end) for each dedup token of `text`, where
// [begin, end) runs from the first to the last source scalar that contributed
// to the token.
template <typename Fn>
void ForEachDedupToken(std::string_view text, Fn&& fn) {
  std::string token;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t at = pos;
    const char32_t cp = unicode::DecodeNext(text, pos);
    if (unicode::IsWhitespace(cp)) {
      if (!token.empty()) {
        fn(std::string_view(token), begin, end);
        token.clear();
      }
      continue;
    }
    const std::size_t before = token.size();
    unicode::AppendDedupFolded(token, cp);
    if (token.size() == before) continue;
    if (before == 0) begin = at;
    end = pos;
  }
  if (!token.empty()) fn(std::string_view(token), begin, end);
}

}  // namespace refinery::detail
