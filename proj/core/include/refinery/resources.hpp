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
#include <unordered_set>
#include <vector>

#include "refinery/quality_filter.hpp"
#include "refinery/url_filter.hpp"

// Bundled defaults. The same lists ship as editable files under data/.
namespace refinery::resources {

// Curated high-quality sources removed at the URL stage.
const std::unordered_set<std::string>& HqDomains();

// Blocklist categories selected by default.
const std::vector<std::string>& BlockCategories();

// Minimal word lists seeded with publicly documented examples only.
ScoringWordLists DefaultWordLists();

const std::unordered_set<std::string>& EnglishStopwords();
const std::unordered_set<std::string>& EngagementWords();
std::vector<LinePattern> DefaultLinePatterns();

}  // namespace refinery::resources
