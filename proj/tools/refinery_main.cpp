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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "refinery/error.hpp"
#include "refinery/fuzzy_dedup.hpp"
#include "refinery/pipeline.hpp"

namespace {

using refinery::PipelineConfig;
using refinery::Stage;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInput = 3;

int ExitCodeFor(refinery::ErrorCode code) {
  switch (code) {
    case refinery::ErrorCode::kConfigError:
    case refinery::ErrorCode::kDomainError:
      return kExitConfig;
    case refinery::ErrorCode::kIoError:
    case refinery::ErrorCode::kBadMagic:
    case refinery::ErrorCode::kTruncated:
    case refinery::ErrorCode::kTruncatedRecord:
    case refinery::ErrorCode::kMalformedRecord:
    case refinery::ErrorCode::kGzipError:
    case refinery::ErrorCode::kRegistryUnavailable:
    case refinery::ErrorCode::kParamMismatch:
      return kExitInput;
    default:
      return kExitFailure;
  }
}

// Flags shared by every subcommand that runs part of the pipeline. Unset
// flags leave the config file (or the built-in defaults) untouched.
struct CommonFlags {
  std::optional<std::string> config;
  std::vector<std::string> inputs;
  std::optional<std::string> input_format;
  std::optional<std::string> dump_id;
  std::optional<std::string> output;
  std::optional<std::string> report;
  std::optional<std::string> rejects;
  std::optional<std::uint32_t> part;
  std::optional<std::uint32_t> parts;
  std::optional<std::string> registry;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  bool quiet = false;
};

struct UrlFlags {
  std::optional<std::string> blocklist_dir;
  std::vector<std::string> categories;
  std::optional<std::string> allowlist;
  std::optional<std::string> wordlists_dir;
  std::optional<int> soft_threshold;
  std::optional<std::string> hq_exclusions;
  std::optional<std::string> extractor;
  std::optional<std::string> language;
  std::optional<double> language_threshold;
  std::optional<std::string> classifier;
};

struct FilterFlags {
  std::optional<std::string> patterns_file;
  std::optional<double> line_budget;
};

struct FuzzyFlags {
  std::optional<std::size_t> n;
  std::optional<std::size_t> b;
  std::optional<std::size_t> r;
  std::optional<std::uint64_t> minhash_seed;
  std::optional<std::string> survivor_policy;
  std::optional<std::string> write_signatures;
  std::optional<std::string> read_signatures;
};

struct ExactFlags {
  std::optional<std::size_t> min_match;
  std::optional<std::string> strategy;
  std::optional<double> drop_partial_threshold;
  std::optional<std::size_t> min_remaining_chars;
  std::optional<std::string> mask_output;
};

void AddCommon(CLI::App* cmd, CommonFlags& f, bool require_output) {
  cmd->add_option("inputs", f.inputs, "WARC or record files, directories or glob patterns");
  cmd->add_option("-c,--config", f.config, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--input-format", f.input_format, "warc or records")->check(CLI::IsMember({"warc", "records"}));
  cmd->add_option("--dump-id", f.dump_id, "dump id for positional inputs");
  auto* out = cmd->add_option("-o,--output", f.output, "output records (JSON lines)");
  if (require_output) out->required();
  cmd->add_option("--report", f.report, "write the JSON stage report here");
  cmd->add_option("--rejects", f.rejects, "write one JSON line per rejected document here");
  cmd->add_option("--part", f.part, "part index");
  cmd->add_option("--parts", f.parts, "number of parts")->check(CLI::PositiveNumber);
  cmd->add_option("--registry", f.registry, "kept-URL registry shared across parts");
  cmd->add_option("--seed", f.seed, "seed for randomized choices");
  cmd->add_option("-j,--workers", f.workers, "worker threads (default: REFINERY_WORKERS or all cores)")
      ->check(CLI::Range(1u, 4096u));
  cmd->add_flag("-q,--quiet", f.quiet, "do not print the stage table");
}

void AddUrl(CLI::App* cmd, UrlFlags& f) {
  cmd->add_option("--blocklist-dir", f.blocklist_dir, "directory of <category>/domains files");
  cmd->add_option("--block-categories", f.categories, "blocklist categories to load")->delimiter(',');
  cmd->add_option("--allowlist", f.allowlist, "domains never blocked");
  cmd->add_option("--wordlists-dir", f.wordlists_dir, "directory holding strict/hard/soft word lists");
  cmd->add_option("--soft-threshold", f.soft_threshold, "soft-word matches that reject a URL");
  cmd->add_option("--hq-exclusions", f.hq_exclusions, "curated domains excluded from web data");
  cmd->add_option("--extractor", f.extractor, "baseline or external:<command>");
  cmd->add_option("--language", f.language, "target language code");
  cmd->add_option("--language-threshold", f.language_threshold, "minimum top-language score");
  cmd->add_option("--classifier", f.classifier, "builtin or external:<command>");
}

void AddFilter(CLI::App* cmd, FilterFlags& f) {
  cmd->add_option("--line-patterns", f.patterns_file, "line-correction pattern file");
  cmd->add_option("--line-budget", f.line_budget, "largest flagged-word fraction a document may lose");
}

void AddFuzzy(CLI::App* cmd, FuzzyFlags& f) {
  cmd->add_option("--shingle-size", f.n, "tokens per shingle");
  cmd->add_option("--hashes-per-bucket", f.b, "minhash values per LSH bucket");
  cmd->add_option("--buckets", f.r, "number of LSH buckets");
  cmd->add_option("--minhash-seed", f.minhash_seed, "seed for the minhash permutations");
  cmd->add_option("--survivor-policy", f.survivor_policy, "smallest-id or seeded-random")
      ->check(CLI::IsMember({"smallest-id", "seeded-random"}));
  cmd->add_option("--write-signatures", f.write_signatures, "cache signatures to this file");
  cmd->add_option("--read-signatures", f.read_signatures, "reuse signatures from this file");
}

void AddExact(CLI::App* cmd, ExactFlags& f) {
  cmd->add_option("--min-match", f.min_match, "shortest duplicated run, in tokens");
  cmd->add_option("--strategy", f.strategy, "cut, mask, drop-partial or drop-any")
      ->check(CLI::IsMember({"cut", "mask", "drop-partial", "drop-any"}));
  cmd->add_option("--drop-partial-threshold", f.drop_partial_threshold, "duplicated fraction that drops a document");
  cmd->add_option("--min-remaining-chars", f.min_remaining_chars, "drop documents left shorter than this");
  cmd->add_option("--mask-output", f.mask_output, "span offsets for the mask strategy (JSON lines)");
}

template <typename T>
void Set(std::optional<T>& dst, const std::optional<T>& src) {
  if (src) dst = *src;
}

template <typename T, typename U>
void Set(T& dst, const std::optional<U>& src) {
  if (src) dst = *src;
}

PipelineConfig BaseConfig(const CommonFlags& f) {
  PipelineConfig config = f.config ? refinery::LoadConfig(*f.config) : PipelineConfig{};
  if (!f.inputs.empty()) {
    config.inputs = {{f.dump_id.value_or("local"), f.inputs}};
  } else if (f.dump_id) {
    for (auto& group : config.inputs) group.dump_id = *f.dump_id;
  }
  if (f.input_format) {
    config.input_format = *f.input_format == "warc" ? refinery::InputFormat::kWarc : refinery::InputFormat::kRecords;
  }
  Set(config.output, f.output);
  Set(config.report, f.report);
  Set(config.rejects, f.rejects);
  Set(config.part, f.part);
  Set(config.parts, f.parts);
  Set(config.registry, f.registry);
  Set(config.seed, f.seed);
  Set(config.workers, f.workers);
  return config;
}

void ApplyUrl(PipelineConfig& config, const UrlFlags& f) {
  Set(config.url_filter.blocklist_dir, f.blocklist_dir);
  if (!f.categories.empty()) config.url_filter.categories = f.categories;
  Set(config.url_filter.allowlist_file, f.allowlist);
  Set(config.url_filter.wordlists_dir, f.wordlists_dir);
  Set(config.url_filter.soft_threshold, f.soft_threshold);
  Set(config.url_filter.hq_domains_file, f.hq_exclusions);
  Set(config.extractor, f.extractor);
  Set(config.language.target, f.language);
  Set(config.language.threshold, f.language_threshold);
  Set(config.language.classifier, f.classifier);
}

void ApplyFilter(PipelineConfig& config, const FilterFlags& f) {
  Set(config.line_corrections.patterns_file, f.patterns_file);
  Set(config.line_corrections.budget, f.line_budget);
}

void ApplyFuzzy(PipelineConfig& config, const FuzzyFlags& f) {
  Set(config.fuzzy.params.n, f.n);
  Set(config.fuzzy.params.b, f.b);
  Set(config.fuzzy.params.r, f.r);
  Set(config.fuzzy.params.seed, f.minhash_seed);
  if (f.survivor_policy) {
    config.fuzzy.policy = *f.survivor_policy == "smallest-id" ? refinery::SurvivorPolicy::kSmallestId
                                                              : refinery::SurvivorPolicy::kSeededRandom;
  }
  Set(config.fuzzy.write_signatures, f.write_signatures);
  Set(config.fuzzy.read_signatures, f.read_signatures);
}

void ApplyExact(PipelineConfig& config, const ExactFlags& f) {
  Set(config.exact.min_match, f.min_match);
  if (f.strategy) config.exact.strategy = refinery::ParseStrategy(*f.strategy).value();
  Set(config.exact.options.drop_partial_threshold, f.drop_partial_threshold);
  Set(config.exact.options.min_remaining_chars, f.min_remaining_chars);
  Set(config.exact.mask_output, f.mask_output);
}

std::vector<Stage> ParseStages(const std::vector<std::string>& names) {
  std::vector<Stage> stages;
  for (const std::string& name : names) {
    const auto stage = refinery::ParseStage(name);
    if (!stage) throw refinery::Error(refinery::ErrorCode::kConfigError, "unknown stage '" + name + "'");
    stages.push_back(*stage);
  }
  return stages;
}

int Execute(PipelineConfig config, const CommonFlags& f) {
  if (config.inputs.empty()) throw refinery::Error(refinery::ErrorCode::kConfigError, "no inputs given");
  if (config.output.empty()) throw refinery::Error(refinery::ErrorCode::kConfigError, "no output given");
  refinery::ValidateConfig(config);
  const refinery::PartResult result = refinery::RunPart(config);
  if (!f.quiet) std::cout << refinery::EmitReport(result, refinery::ReportFormat::kTable);
  for (const refinery::DocumentError& e : result.errors) {
    std::cerr << "warning: " << e.doc_id << " [" << e.stage << "]: " << e.message << '\n';
  }
  return kExitOk;
}

int PrintReport(const std::string& path, const std::string& format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw refinery::Error(refinery::ErrorCode::kIoError, "cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  const refinery::PartResult result = refinery::ParseReport(text.str());
  std::cout << refinery::EmitReport(result, format == "json" ? refinery::ReportFormat::kJson
                                                             : refinery::ReportFormat::kTable);
  return kExitOk;
}

int PrintCurve(std::size_t b, std::size_t r, double from, double to, double step) {
  if (!(step > 0.0) || from > to) {
    throw refinery::Error(refinery::ErrorCode::kDomainError, "need from <= to and a positive step");
  }
  std::printf("%-8s %s\n", "s", "P(match)");
  // Index-based so rounding never drops the last point.
  const auto points = static_cast<std::size_t>((to - from) / step + 1e-9);
  for (std::size_t i = 0; i <= points; ++i) {
    const double s = from + static_cast<double>(i) * step;
    std::printf("%-8.3f %.6f\n", s, refinery::MatchProbability(s, b, r));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"refinery: web-crawl text refinement"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "refinery 0.3.0");

  CommonFlags common;
  UrlFlags url;
  FilterFlags filter;
  FuzzyFlags fuzzy;
  ExactFlags exact;
  std::vector<std::string> stage_names;

  auto* ingest = app.add_subcommand("ingest", "read WARC input, filter URLs, extract text and identify language");
  AddCommon(ingest, common, false);
  AddUrl(ingest, url);

  auto* filt = app.add_subcommand("filter", "apply repetition, quality and line-correction filters to records");
  AddCommon(filt, common, false);
  AddFilter(filt, filter);

  auto* dfuzzy = app.add_subcommand("dedup-fuzzy", "remove near-duplicate records with MinHash LSH");
  AddCommon(dfuzzy, common, false);
  AddFuzzy(dfuzzy, fuzzy);

  auto* dexact = app.add_subcommand("dedup-exact", "remove exact duplicate substrings with a suffix array");
  AddCommon(dexact, common, false);
  AddExact(dexact, exact);

  auto* run = app.add_subcommand("run", "run one part of the full pipeline");
  AddCommon(run, common, false);
  AddUrl(run, url);
  AddFilter(run, filter);
  AddFuzzy(run, fuzzy);
  AddExact(run, exact);
  run->add_option("--stages", stage_names, "stages to run, in pipeline order")->delimiter(',');

  std::string report_path;
  std::string report_format = "table";
  auto* report = app.add_subcommand("report", "print a stage report written by a previous run");
  report->add_option("report", report_path, "JSON report file")->required();
  report->add_option("--format", report_format, "table or json")->check(CLI::IsMember({"table", "json"}));

  std::size_t curve_b = 20;
  std::size_t curve_r = 450;
  double curve_from = 0.5;
  double curve_to = 1.0;
  double curve_step = 0.05;
  auto* curve = app.add_subcommand("lsh-curve", "print the LSH match probability over a range of similarities");
  curve->add_option("-b,--hashes-per-bucket", curve_b, "minhash values per bucket")->check(CLI::PositiveNumber);
  curve->add_option("-r,--buckets", curve_r, "number of buckets")->check(CLI::PositiveNumber);
  curve->add_option("--from", curve_from)->check(CLI::Range(0.0, 1.0));
  curve->add_option("--to", curve_to)->check(CLI::Range(0.0, 1.0));
  curve->add_option("--step", curve_step);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (report->parsed()) return PrintReport(report_path, report_format);
    if (curve->parsed()) return PrintCurve(curve_b, curve_r, curve_from, curve_to, curve_step);

    PipelineConfig config = BaseConfig(common);
    if (ingest->parsed()) {
      ApplyUrl(config, url);
      config.input_format = refinery::InputFormat::kWarc;
      config.stages = {Stage::kIngest, Stage::kUrlFilter, Stage::kUrlDedup, Stage::kExtract, Stage::kLanguage};
    } else if (filt->parsed()) {
      ApplyFilter(config, filter);
      if (!common.input_format) config.input_format = refinery::InputFormat::kRecords;
      config.stages = {Stage::kIngest, Stage::kRepetition, Stage::kQuality, Stage::kLineCorrections};
    } else if (dfuzzy->parsed()) {
      ApplyFuzzy(config, fuzzy);
      if (!common.input_format) config.input_format = refinery::InputFormat::kRecords;
      config.stages = {Stage::kIngest, Stage::kFuzzyDedup};
    } else if (dexact->parsed()) {
      ApplyExact(config, exact);
      if (!common.input_format) config.input_format = refinery::InputFormat::kRecords;
      config.stages = {Stage::kIngest, Stage::kExactDedup};
    } else {
      ApplyUrl(config, url);
      ApplyFilter(config, filter);
      ApplyFuzzy(config, fuzzy);
      ApplyExact(config, exact);
      if (!stage_names.empty()) config.stages = ParseStages(stage_names);
    }
    return Execute(std::move(config), common);
  } catch (const refinery::Error& e) {
    std::cerr << "refinery: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "refinery: " << e.what() << '\n';
    return kExitFailure;
  }
}
