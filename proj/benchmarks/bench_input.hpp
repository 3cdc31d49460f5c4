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

#include <cstdint>
#include <random>
#include <string>

namespace refinery::bench {

// Pseudo-English prose with sentence breaks and occasional paragraphs.
inline std::string Prose(std::size_t words, std::uint64_t seed) {
  static const char* kWords[] = {"the",    "river",  "market", "quiet",  "garden", "of",     "and",    "winter",
                                 "people", "walked", "along",  "bright", "window", "to",     "a",      "library",
                                 "slowly", "houses", "under",  "summer", "old",    "bridge", "stories", "north"};
  std::mt19937_64 rng(seed);
  std::string out;
  for (std::size_t i = 0; i < words; ++i) {
    out += kWords[rng() % std::size(kWords)];
    if (rng() % 12 == 0) {
      out += rng() % 6 == 0 ? ".\n" : ". ";
    } else {
      out += ' ';
    }
  }
  out += '.';
  return out;
}

}  // namespace refinery::bench
