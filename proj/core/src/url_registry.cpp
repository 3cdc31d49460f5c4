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
#include <fstream>
#include <system_error>

#include "refinery/error.hpp"
#include "refinery/pipeline.hpp"
#include "refinery/unicode.hpp"
#include "refinery/url_filter.hpp"

namespace refinery {

KeptUrlRegistry KeptUrlRegistry::Load(const std::filesystem::path& path) {
  KeptUrlRegistry registry;
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) {
    if (ec) throw Error(ErrorCode::kRegistryUnavailable, "cannot stat registry " + path.string() + ": " + ec.message());
    return registry;
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kRegistryUnavailable, "cannot read registry " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) registry.urls_.insert(line);
  }
  if (in.bad()) throw Error(ErrorCode::kRegistryUnavailable, "error reading registry " + path.string());
  return registry;
}

bool KeptUrlRegistry::Contains(std::string_view canonical_url) const {
  return urls_.count(std::string(canonical_url)) != 0;
}

void KeptUrlRegistry::CommitPart(const std::vector<std::string>& canonical_urls, const std::filesystem::path& path) {
  for (const std::string& url : canonical_urls) urls_.insert(url);
  std::vector<std::string> sorted(urls_.begin(), urls_.end());
  std::sort(sorted.begin(), sorted.end());

  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorCode::kRegistryUnavailable, "cannot write registry " + tmp.string());
    for (const std::string& url : sorted) out << url << '\n';
    out.flush();
    if (!out) throw Error(ErrorCode::kRegistryUnavailable, "write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kRegistryUnavailable, "cannot replace registry " + path.string() + ": " + ec.message());
}

std::string CanonicalUrl(std::string_view url) {
  try {
    return NormalizeUrl(url).full_lower;
  } catch (const Error&) {
    return unicode::ToLowerUtf8(url);
  }
}

Verdict UrlDedupGate(std::string_view url, const KeptUrlRegistry& registry) {
  return registry.Contains(CanonicalUrl(url)) ? Verdict::Reject(RejectReason::kUrlRevisit) : Verdict::Keep();
}

}  // namespace refinery
