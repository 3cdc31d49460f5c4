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

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "refinery/document.hpp"
#include "refinery/exact_dedup.hpp"
#include "refinery/fuzzy_dedup.hpp"
#include "refinery/quality_filter.hpp"
#include "refinery/stage_stats.hpp"

namespace refinery {

// ---------------------------------------------------------------------------
// Stages
// ---------------------------------------------------------------------------

enum class Stage {
  kIngest,
  kUrlFilter,
  kUrlDedup,
  kExtract,
  kLanguage,
  kRepetition,
  kQuality,
  kLineCorrections,
  kFuzzyDedup,
  kExactDedup,
};

inline constexpr std::array<Stage, 10> kCanonicalStages = {
    Stage::kIngest,     Stage::kUrlFilter, Stage::kUrlDedup,        Stage::kExtract,    Stage::kLanguage,
    Stage::kRepetition, Stage::kQuality,   Stage::kLineCorrections, Stage::kFuzzyDedup, Stage::kExactDedup,
};

std::string_view StageName(Stage stage);
std::optional<Stage> ParseStage(std::string_view name);

// Stages after which accounting switches from documents to tokens.
bool IsTokenStage(Stage stage);

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

enum class InputFormat { kWarc, kRecords };

struct InputGroup {
  std::string dump_id;
  std::vector<std::string> paths;  // files, directories or glob patterns
};

struct UrlFilterConfig {
  std::optional<std::filesystem::path> blocklist_dir;
  std::vector<std::string> categories;  // empty: bundled default categories
  std::optional<std::filesystem::path> allowlist_file;
  std::optional<std::filesystem::path> wordlists_dir;
  int soft_threshold = 2;
  std::optional<std::filesystem::path> hq_domains_file;
};

struct LanguageConfig {
  std::string target = "en";
  double threshold = 0.65;
  std::string classifier = "builtin";  // or "external:<command>"
};

struct LineCorrectionConfig {
  std::optional<std::filesystem::path> patterns_file;
  double budget = 0.05;
};

struct FuzzyDedupConfig {
  MinHashParams params;
  SurvivorPolicy policy = SurvivorPolicy::kSmallestId;
  std::optional<std::filesystem::path> write_signatures;
  std::optional<std::filesystem::path> read_signatures;
};

struct ExactDedupConfig {
  std::size_t min_match = 50;
  DedupStrategy strategy = DedupStrategy::kCut;
  StrategyOptions options;
  // Mask strategy: span offsets are written here, one JSON line per kept doc.
  std::optional<std::filesystem::path> mask_output;
};

struct PipelineConfig {
  std::vector<InputGroup> inputs;
  InputFormat input_format = InputFormat::kWarc;
  std::filesystem::path output;
  std::optional<std::filesystem::path> report;
  std::optional<std::filesystem::path> rejects;  // optional per-document rejection log
  std::uint32_t part = 0;
  std::uint32_t parts = 1;
  std::optional<std::filesystem::path> registry;
  std::uint64_t seed = 0;
  unsigned workers = 0;  // 0: REFINERY_WORKERS or the hardware concurrency
  std::vector<Stage> stages{kCanonicalStages.begin(), kCanonicalStages.end()};

  UrlFilterConfig url_filter;
  std::string extractor = "baseline";
  LanguageConfig language;
  RepetitionThresholds repetition;
  QualityThresholds quality;
  LineCorrectionConfig line_corrections;
  FuzzyDedupConfig fuzzy;
  ExactDedupConfig exact;

  bool enabled(Stage stage) const;
};

// Parses a JSON config. Unknown keys, wrong types, out-of-range values and a
// stage list that is not in canonical order all throw ConfigError. Relative
// paths are resolved against `base_dir`.
PipelineConfig ParseConfig(std::string_view json_text, const std::filesystem::path& base_dir = {});
PipelineConfig LoadConfig(const std::filesystem::path& path);

// Throws ConfigError on inconsistent settings.
void ValidateConfig(const PipelineConfig& config);

// REFINERY_WORKERS if set and valid, else the hardware concurrency (min 1).
unsigned DefaultWorkerCount();

// ---------------------------------------------------------------------------
// Sharding and cross-part URL registry
// ---------------------------------------------------------------------------

class ShardPlan {
 public:
  explicit ShardPlan(std::uint32_t parts);

  std::uint32_t parts() const { return parts_; }
  std::uint32_t PartOf(std::string_view dump_id, std::uint64_t ordinal) const;

  // counts[part] of records each part receives from a dump of `size`.
  std::vector<std::uint64_t> PartSizes(std::uint64_t size) const;

 private:
  std::uint32_t parts_;
};

ShardPlan PlanShards(const std::map<std::string, std::uint64_t>& dump_sizes, std::uint32_t parts);

// Canonical URLs kept by earlier parts, one per line on disk.
class KeptUrlRegistry {
 public:
  KeptUrlRegistry() = default;

  // A missing file is an empty registry; an unreadable one throws
  // RegistryUnavailable.
  static KeptUrlRegistry Load(const std::filesystem::path& path);

  bool Contains(std::string_view canonical_url) const;
  std::size_t size() const { return urls_.size(); }

  // Adds the URLs and rewrites the file atomically (temp file + rename).
  void CommitPart(const std::vector<std::string>& canonical_urls, const std::filesystem::path& path);
  void Add(std::string canonical_url) { urls_.insert(std::move(canonical_url)); }

 private:
  std::unordered_set<std::string> urls_;
};

// normalize_url(url).full_lower, or the lowercased input if unparsable.
std::string CanonicalUrl(std::string_view url);

Verdict UrlDedupGate(std::string_view url, const KeptUrlRegistry& registry);

// ---------------------------------------------------------------------------
// Running a part
// ---------------------------------------------------------------------------

struct DocumentError {
  std::string doc_id;
  std::string stage;
  std::string message;
};

struct PartResult {
  std::uint64_t records_written = 0;
  std::uint64_t ingested = 0;
  std::uint64_t malformed = 0;
  std::vector<StageStats> stats;
  std::map<RejectReason, std::uint64_t> rejections;
  // Non-HTML or non-2xx WARC records skipped before ingestion.
  std::map<std::string, std::uint64_t> skipped;
  std::vector<DocumentError> errors;
  std::string tokenizer = "dedup-whitespace";
};

// Executes the enabled stages in canonical order, writes survivors to
// config.output and the report to config.report (if set), and commits the
// survivors' URLs to the registry.
PartResult RunPart(const PipelineConfig& config);

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

enum class ReportFormat { kTable, kJson };

// Throws ChainBroken when the stats do not chain.
std::string EmitReport(const PartResult& result, ReportFormat format);
std::string EmitReport(std::span<const StageStats> stats, ReportFormat format);

// Reads back the JSON form.
PartResult ParseReport(std::string_view json_text);

// Four significant digits, e.g. 0.1429 or 1.000.
std::string FormatRate(double rate);

}  // namespace refinery
