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

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "refinery/document.hpp"

namespace refinery {

struct NormalizedUrl {
  std::string host;
  std::string registrable_domain;
  // Whole URL lowercased, scheme stripped.
  std::string full_lower;

  bool operator==(const NormalizedUrl&) const = default;
};

// Throws UnparsableUrl. Idempotent: NormalizeUrl(n.full_lower) == n.
NormalizedUrl NormalizeUrl(std::string_view url);

// Suffixes of `host` from the full host down to its registrable domain,
// e.g. "a.b.example.com" -> {"a.b.example.com", "b.example.com", "example.com"}.
std::vector<std::string> HostAndParents(const NormalizedUrl& url);

struct DomainBlocklist {
  std::unordered_set<std::string> entries;
  std::map<std::string, std::string> categories;  // domain -> category label
  // Manual false-positive overrides; an allowlisted host or parent is never blocked.
  std::unordered_set<std::string> allowlist;

  void Add(std::string domain, const std::string& category);
};

// Loads <dir>/<category>/domains for every selected category. Lines are
// lowercased and trimmed; blank lines and '#' comments are skipped.
DomainBlocklist LoadBlocklist(const std::filesystem::path& dir, const std::vector<std::string>& categories);

bool DomainBlocked(std::string_view url, const DomainBlocklist& blocklist);

enum class MatchTier { kStrict, kHard, kSoft };
std::string_view MatchTierName(MatchTier tier);

struct WordMatch {
  MatchTier tier;
  std::string word;
  bool operator==(const WordMatch&) const = default;
};

struct ScoringWordLists {
  std::vector<std::string> strict_subword;
  std::vector<std::string> hard_whole_word;
  std::vector<std::string> soft_words;
  int soft_threshold = 2;
};

// Reads strict.txt, hard.txt and soft.txt from `dir` (one word per line,
// '#' comments). Missing files leave the tier empty.
ScoringWordLists LoadWordLists(const std::filesystem::path& dir, int soft_threshold = 2);

struct UrlVerdict {
  bool keep = true;
  std::optional<RejectReason> reason;
  // Set when the URL could not be parsed; such documents are rejected and
  // counted separately from the RejectReason taxonomy.
  bool malformed = false;
  std::vector<WordMatch> matches;
};

// Strict words match as substrings of the URL with every non-alphanumeric
// separator removed; hard and soft words match whole words, where words are
// maximal runs of [a-z0-9]. Every soft-word occurrence counts once toward the
// soft threshold.
UrlVerdict ScoreUrl(std::string_view url, const ScoringWordLists& lists);

bool HqExcluded(std::string_view url, const std::unordered_set<std::string>& hq_domains);

struct UrlFilterResources {
  DomainBlocklist blocklist;
  ScoringWordLists word_lists;
  std::unordered_set<std::string> hq_domains;
};

// Blocklist, then word score, then HQ exclusion; first hit decides.
UrlVerdict UrlGate(std::string_view url, const DomainBlocklist& blocklist, const ScoringWordLists& lists,
                   const std::unordered_set<std::string>& hq_domains);

inline UrlVerdict UrlGate(std::string_view url, const UrlFilterResources& res) {
  return UrlGate(url, res.blocklist, res.word_lists, res.hq_domains);
}

}  // namespace refinery
