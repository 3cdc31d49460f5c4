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

#include "refinery/url_filter.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>

#include "refinery/error.hpp"

namespace refinery {
namespace {

// Two-label public suffixes under which the registrable domain has three labels.
constexpr std::array<std::string_view, 24> kMultiLabelSuffixes = {
    "co.uk",  "org.uk", "ac.uk",  "gov.uk", "me.uk",  "com.au", "net.au", "org.au",
    "edu.au", "co.jp",  "ne.jp",  "or.jp",  "co.nz",  "com.br", "com.cn", "net.cn",
    "co.in",  "co.za",  "com.mx", "co.kr",  "com.tr", "com.ar", "com.tw", "com.sg",
};

bool IsAsciiAlnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view TrimView(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Length of a leading "scheme://" or "//", 0 if none.
std::size_t SchemePrefix(std::string_view s) {
  if (s.starts_with("//")) return 2;
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return 0;
  std::size_t i = 1;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.') {
      ++i;
      continue;
    }
    break;
  }
  if (s.substr(i).starts_with("://")) return i + 3;
  return 0;
}

bool IsIpv4(std::string_view host) {
  int dots = 0;
  for (char c : host) {
    if (c == '.') ++dots;
    else if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return dots == 3;
}

std::string RegistrableDomain(const std::string& host) {
  if (host.front() == '[' || IsIpv4(host)) return host;
  std::vector<std::size_t> dots;
  for (std::size_t i = 0; i < host.size(); ++i) {
    if (host[i] == '.') dots.push_back(i);
  }
  if (dots.empty()) return host;
  std::size_t labels = 2;
  if (dots.size() >= 2) {
    const std::string_view last_two = std::string_view(host).substr(dots[dots.size() - 2] + 1);
    if (std::find(kMultiLabelSuffixes.begin(), kMultiLabelSuffixes.end(), last_two) != kMultiLabelSuffixes.end()) {
      labels = 3;
    }
  }
  if (dots.size() < labels) return host;
  return host.substr(dots[dots.size() - labels] + 1);
}

std::vector<std::string> ReadWordFile(const std::filesystem::path& path) {
  std::vector<std::string> words;
  std::ifstream in(path);
  if (!in) return words;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string word = AsciiLower(TrimView(line));
    if (!word.empty()) words.push_back(word);
  }
  return words;
}

// Maximal runs of [a-z0-9].
std::vector<std::string_view> UrlWords(std::string_view lower) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < lower.size()) {
    while (i < lower.size() && !IsAsciiAlnum(lower[i])) ++i;
    const std::size_t start = i;
    while (i < lower.size() && IsAsciiAlnum(lower[i])) ++i;
    if (i > start) words.push_back(lower.substr(start, i - start));
  }
  return words;
}

bool AnyInSet(const std::vector<std::string>& candidates, const std::unordered_set<std::string>& set) {
  return std::any_of(candidates.begin(), candidates.end(), [&](const std::string& d) { return set.contains(d); });
}

}  // namespace

NormalizedUrl NormalizeUrl(std::string_view url) {
  std::string lower = AsciiLower(TrimView(url));
  std::string_view rest = lower;
  while (std::size_t n = SchemePrefix(rest)) rest.remove_prefix(n);
  if (rest.empty()) throw Error(ErrorCode::kUnparsableUrl, "empty URL '" + std::string(url) + "'");

  std::string_view authority = rest.substr(0, rest.find_first_of("/?#"));
  if (auto at = authority.rfind('@'); at != std::string_view::npos) authority.remove_prefix(at + 1);
  std::string host;
  if (authority.starts_with('[')) {
    const std::size_t close = authority.find(']');
    if (close == std::string_view::npos) throw Error(ErrorCode::kUnparsableUrl, "bad IPv6 host in '" + std::string(url) + "'");
    host = std::string(authority.substr(0, close + 1));
  } else {
    if (auto colon = authority.rfind(':'); colon != std::string_view::npos) {
      const std::string_view port = authority.substr(colon + 1);
      if (!std::all_of(port.begin(), port.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw Error(ErrorCode::kUnparsableUrl, "bad port in '" + std::string(url) + "'");
      }
      authority = authority.substr(0, colon);
    }
    while (authority.ends_with('.')) authority.remove_suffix(1);
    host = std::string(authority);
    if (host.empty() || host.front() == '.' || host.find("..") != std::string::npos) {
      throw Error(ErrorCode::kUnparsableUrl, "bad host in '" + std::string(url) + "'");
    }
    for (char c : host) {
      const auto u = static_cast<unsigned char>(c);
      if (u >= 0x80) continue;
      if (!(IsAsciiAlnum(c) || c == '-' || c == '_' || c == '.')) {
        throw Error(ErrorCode::kUnparsableUrl, "bad host character in '" + std::string(url) + "'");
      }
    }
  }

  NormalizedUrl out;
  out.registrable_domain = RegistrableDomain(host);
  out.host = std::move(host);
  out.full_lower = std::string(rest);
  return out;
}

std::vector<std::string> HostAndParents(const NormalizedUrl& url) {
  std::vector<std::string> out;
  std::string_view h = url.host;
  while (true) {
    out.emplace_back(h);
    if (h.size() <= url.registrable_domain.size()) break;
    const std::size_t dot = h.find('.');
    if (dot == std::string_view::npos) break;
    h.remove_prefix(dot + 1);
  }
  return out;
}

void DomainBlocklist::Add(std::string domain, const std::string& category) {
  domain = AsciiLower(TrimView(domain));
  if (domain.empty()) return;
  categories.emplace(domain, category);
  entries.insert(std::move(domain));
}

DomainBlocklist LoadBlocklist(const std::filesystem::path& dir, const std::vector<std::string>& categories) {
  DomainBlocklist list;
  for (const std::string& category : categories) {
    const std::filesystem::path file = dir / category / "domains";
    if (!std::filesystem::exists(file)) continue;
    for (std::string& d : ReadWordFile(file)) list.Add(std::move(d), category);
  }
  return list;
}

bool DomainBlocked(std::string_view url, const DomainBlocklist& blocklist) {
  const auto parents = HostAndParents(NormalizeUrl(url));
  if (AnyInSet(parents, blocklist.allowlist)) return false;
  return AnyInSet(parents, blocklist.entries);
}

std::string_view MatchTierName(MatchTier tier) {
  switch (tier) {
    case MatchTier::kStrict: return "strict";
    case MatchTier::kHard: return "hard";
    case MatchTier::kSoft: return "soft";
  }
  return "unknown";
}

ScoringWordLists LoadWordLists(const std::filesystem::path& dir, int soft_threshold) {
  ScoringWordLists lists;
  lists.strict_subword = ReadWordFile(dir / "strict.txt");
  lists.hard_whole_word = ReadWordFile(dir / "hard.txt");
  lists.soft_words = ReadWordFile(dir / "soft.txt");
  lists.soft_threshold = soft_threshold;
  return lists;
}

UrlVerdict ScoreUrl(std::string_view url, const ScoringWordLists& lists) {
  const NormalizedUrl norm = NormalizeUrl(url);
  UrlVerdict verdict;

  std::string squashed;
  squashed.reserve(norm.full_lower.size());
  for (char c : norm.full_lower) {
    if (IsAsciiAlnum(c) || static_cast<unsigned char>(c) >= 0x80) squashed.push_back(c);
  }
  for (const std::string& w : lists.strict_subword) {
    if (squashed.find(w) != std::string::npos) verdict.matches.push_back({MatchTier::kStrict, w});
  }

  const auto words = UrlWords(norm.full_lower);
  int soft_hits = 0;
  bool hard_hit = false;
  for (std::string_view word : words) {
    if (std::find(lists.hard_whole_word.begin(), lists.hard_whole_word.end(), word) != lists.hard_whole_word.end()) {
      verdict.matches.push_back({MatchTier::kHard, std::string(word)});
      hard_hit = true;
    }
    if (std::find(lists.soft_words.begin(), lists.soft_words.end(), word) != lists.soft_words.end()) {
      verdict.matches.push_back({MatchTier::kSoft, std::string(word)});
      ++soft_hits;
    }
  }
  const bool strict_hit = std::any_of(verdict.matches.begin(), verdict.matches.end(),
                                      [](const WordMatch& m) { return m.tier == MatchTier::kStrict; });
  if (strict_hit || hard_hit || soft_hits >= lists.soft_threshold) {
    verdict.keep = false;
    verdict.reason = RejectReason::kUrlWordScore;
  }
  return verdict;
}

bool HqExcluded(std::string_view url, const std::unordered_set<std::string>& hq_domains) {
  return AnyInSet(HostAndParents(NormalizeUrl(url)), hq_domains);
}

UrlVerdict UrlGate(std::string_view url, const DomainBlocklist& blocklist, const ScoringWordLists& lists,
                   const std::unordered_set<std::string>& hq_domains) {
  UrlVerdict verdict;
  try {
    if (DomainBlocked(url, blocklist)) {
      verdict.keep = false;
      verdict.reason = RejectReason::kUrlBlocklisted;
      return verdict;
    }
    verdict = ScoreUrl(url, lists);
    if (!verdict.keep) return verdict;
    if (HqExcluded(url, hq_domains)) {
      verdict.keep = false;
      verdict.reason = RejectReason::kUrlHqExcluded;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUnparsableUrl) throw;
    verdict = UrlVerdict{};
    verdict.keep = false;
    verdict.malformed = true;
  }
  return verdict;
}

}  // namespace refinery
