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
#include <unordered_map>

#include "dedup_tokens.hpp"
#include "refinery/exact_dedup.hpp"
#include "refinery/fuzzy_dedup.hpp"

namespace refinery {

std::vector<std::string> NormalizeForDedup(std::string_view text) {
  std::vector<std::string> tokens;
  detail::ForEachDedupToken(text, [&](std::string_view token, std::size_t, std::size_t) { tokens.emplace_back(token); });
  return tokens;
}

std::string JoinTokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const std::string& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

std::vector<std::string> ShingleSet(const std::vector<std::string>& tokens, std::size_t n) {
  std::vector<std::string> shingles;
  if (tokens.empty()) return shingles;
  if (n == 0) n = 1;
  if (tokens.size() < n) {
    shingles.push_back(JoinTokens(tokens));
    return shingles;
  }
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string s = tokens[i];
    for (std::size_t j = 1; j < n; ++j) {
      s.push_back(' ');
      s += tokens[i + j];
    }
    shingles.push_back(std::move(s));
  }
  std::sort(shingles.begin(), shingles.end());
  shingles.erase(std::unique(shingles.begin(), shingles.end()), shingles.end());
  return shingles;
}

TokenizedCorpus TokenizeReversible(const std::vector<std::string_view>& docs) {
  TokenizedCorpus corpus;
  corpus.vocabulary.emplace_back();
  std::unordered_map<std::string, std::uint32_t> interned;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (d != 0) {
      corpus.token_ids.push_back(TokenizedCorpus::kSeparator);
      corpus.origins.push_back({});
    }
    const std::size_t first = corpus.token_ids.size();
    detail::ForEachDedupToken(docs[d], [&](std::string_view token, std::size_t begin, std::size_t end) {
      auto [it, inserted] =
          interned.try_emplace(std::string(token), static_cast<std::uint32_t>(corpus.vocabulary.size()));
      if (inserted) corpus.vocabulary.push_back(it->first);
      corpus.token_ids.push_back(it->second);
      corpus.origins.push_back({static_cast<std::uint32_t>(d), {begin, end}});
    });
    corpus.doc_spans.emplace_back(first, corpus.token_ids.size());
  }
  return corpus;
}

}  // namespace refinery
