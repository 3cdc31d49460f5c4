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

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "refinery/error.hpp"
#include "refinery/pipeline.hpp"

namespace refinery {
namespace {

using json = nlohmann::json;

constexpr std::array<std::string_view, 10> kStageNames = {
    "ingest",  "url_filter", "url_dedup",        "extract",     "language",
    "repetition", "quality", "line_corrections", "fuzzy_dedup", "exact_dedup",
};

[[noreturn]] void Fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kConfigError, where + ": " + what);
}

// Walks one JSON object, handing out known keys and rejecting the rest.
class Section {
 public:
  Section(const json& obj, std::string where, std::filesystem::path base)
      : obj_(obj), where_(std::move(where)), base_(std::move(base)) {
    if (!obj_.is_object()) Fail(where_, "expected an object");
  }

  // Rejects keys that were never asked for.
  void Finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (used_.count(it.key()) == 0) Fail(where_.empty() ? "config" : where_, "unknown key '" + it.key() + "'");
    }
  }

  const json* Find(const std::string& key) {
    used_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  std::string Path(const std::string& key) const { return where_.empty() ? key : where_ + "." + key; }

  void String(const std::string& key, std::string& out) {
    if (const json* v = Find(key)) {
      if (!v->is_string()) Fail(Path(key), "expected a string");
      out = v->get<std::string>();
    }
  }

  void File(const std::string& key, std::optional<std::filesystem::path>& out) {
    if (const json* v = Find(key)) {
      if (v->is_null()) {
        out.reset();
        return;
      }
      if (!v->is_string()) Fail(Path(key), "expected a path string");
      out = Resolve(v->get<std::string>());
    }
  }

  void File(const std::string& key, std::filesystem::path& out) {
    std::optional<std::filesystem::path> tmp;
    File(key, tmp);
    if (tmp) out = *tmp;
  }

  template <typename T>
  void Unsigned(const std::string& key, T& out, std::uint64_t min = 0) {
    if (const json* v = Find(key)) {
      if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<std::int64_t>() >= 0)) {
        Fail(Path(key), "expected a non-negative integer");
      }
      const auto value = v->get<std::uint64_t>();
      if (value < min) Fail(Path(key), "must be at least " + std::to_string(min));
      if (value > std::numeric_limits<T>::max()) Fail(Path(key), "out of range");
      out = static_cast<T>(value);
    }
  }

  void Int(const std::string& key, int& out, int min) {
    if (const json* v = Find(key)) {
      if (!v->is_number_integer()) Fail(Path(key), "expected an integer");
      const auto value = v->get<std::int64_t>();
      if (value < min || value > std::numeric_limits<int>::max()) Fail(Path(key), "out of range");
      out = static_cast<int>(value);
    }
  }

  void Real(const std::string& key, double& out, double lo, double hi, bool lo_open = false) {
    if (const json* v = Find(key)) {
      if (!v->is_number()) Fail(Path(key), "expected a number");
      const double value = v->get<double>();
      if (value < lo || value > hi || (lo_open && value == lo)) {
        Fail(Path(key), "must lie in " + std::string(lo_open ? "(" : "[") + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
      }
      out = value;
    }
  }

  void Bool(const std::string& key, bool& out) {
    if (const json* v = Find(key)) {
      if (!v->is_boolean()) Fail(Path(key), "expected true or false");
      out = v->get<bool>();
    }
  }

  void Strings(const std::string& key, std::vector<std::string>& out) {
    if (const json* v = Find(key)) {
      if (!v->is_array()) Fail(Path(key), "expected an array of strings");
      out.clear();
      for (const json& item : *v) {
        if (!item.is_string()) Fail(Path(key), "expected an array of strings");
        out.push_back(item.get<std::string>());
      }
    }
  }

  std::filesystem::path Resolve(const std::string& p) const {
    std::filesystem::path path(p);
    if (path.is_relative() && !base_.empty()) return base_ / path;
    return path;
  }

  const std::string& where() const { return where_; }
  const std::filesystem::path& base() const { return base_; }

 private:
  const json& obj_;
  std::string where_;
  std::filesystem::path base_;
  std::set<std::string> used_;
};

void ParseInputs(const json& v, PipelineConfig& config, const std::filesystem::path& base, const std::string& dump) {
  if (!v.is_array()) Fail("inputs", "expected an array");
  config.inputs.clear();
  InputGroup loose{dump, {}};
  auto resolve = [&](const std::string& p) {
    // Glob patterns are resolved textually as well.
    std::filesystem::path path(p);
    return (path.is_relative() && !base.empty() ? base / path : path).string();
  };
  for (const json& item : v) {
    if (item.is_string()) {
      loose.paths.push_back(resolve(item.get<std::string>()));
      continue;
    }
    Section s(item, "inputs[]", base);
    InputGroup group;
    s.String("dump_id", group.dump_id);
    std::vector<std::string> paths;
    s.Strings("paths", paths);
    if (group.dump_id.empty()) Fail("inputs[]", "dump_id is required");
    if (paths.empty()) Fail("inputs[]", "paths must be a non-empty array");
    s.Finish();
    for (const std::string& p : paths) group.paths.push_back(resolve(p));
    config.inputs.push_back(std::move(group));
  }
  if (!loose.paths.empty()) config.inputs.insert(config.inputs.begin(), std::move(loose));
}

void ParseStages(const json& v, PipelineConfig& config) {
  if (!v.is_array()) Fail("stages", "expected an array of stage names");
  std::vector<Stage> stages;
  for (const json& item : v) {
    if (!item.is_string()) Fail("stages", "expected an array of stage names");
    const auto stage = ParseStage(item.get<std::string>());
    if (!stage) Fail("stages", "unknown stage '" + item.get<std::string>() + "'");
    if (!stages.empty() && static_cast<int>(*stage) <= static_cast<int>(stages.back())) {
      Fail("stages", "'" + std::string(StageName(*stage)) + "' must come after '" +
                         std::string(StageName(stages.back())) + "' (stages run in canonical order, each once)");
    }
    stages.push_back(*stage);
  }
  if (stages.empty() || stages.front() != Stage::kIngest) Fail("stages", "the list must start with 'ingest'");
  config.stages = std::move(stages);
}

}  // namespace

std::string_view StageName(Stage stage) { return kStageNames[static_cast<std::size_t>(stage)]; }

std::optional<Stage> ParseStage(std::string_view name) {
  for (std::size_t i = 0; i < kStageNames.size(); ++i) {
    if (kStageNames[i] == name) return static_cast<Stage>(i);
  }
  return std::nullopt;
}

bool IsTokenStage(Stage stage) { return stage == Stage::kFuzzyDedup || stage == Stage::kExactDedup; }

bool PipelineConfig::enabled(Stage stage) const {
  for (Stage s : stages) {
    if (s == stage) return true;
  }
  return false;
}

PipelineConfig ParseConfig(std::string_view json_text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    Fail("config", std::string("invalid JSON: ") + e.what());
  }
  PipelineConfig config;
  {
    Section s(root, "", base_dir);
    std::string dump_id = "local";
    s.String("dump_id", dump_id);
    if (const json* v = s.Find("inputs")) ParseInputs(*v, config, base_dir, dump_id);
    std::string format = "warc";
    s.String("input_format", format);
    if (format == "warc") {
      config.input_format = InputFormat::kWarc;
    } else if (format == "records") {
      config.input_format = InputFormat::kRecords;
    } else {
      Fail("input_format", "expected 'warc' or 'records'");
    }
    s.File("output", config.output);
    s.File("report", config.report);
    s.File("rejects", config.rejects);
    s.Unsigned("part", config.part);
    s.Unsigned("parts", config.parts, 1);
    s.File("registry", config.registry);
    s.Unsigned("seed", config.seed);
    s.Unsigned("workers", config.workers);
    if (const json* v = s.Find("stages")) ParseStages(*v, config);
    s.String("extractor", config.extractor);

    if (const json* v = s.Find("url_filter")) {
      Section u(*v, "url_filter", base_dir);
      u.File("blocklist_dir", config.url_filter.blocklist_dir);
      u.Strings("categories", config.url_filter.categories);
      u.File("allowlist_file", config.url_filter.allowlist_file);
      u.File("wordlists_dir", config.url_filter.wordlists_dir);
      u.Int("soft_threshold", config.url_filter.soft_threshold, 1);
      u.File("hq_domains_file", config.url_filter.hq_domains_file);
      u.Finish();
    }
    if (const json* v = s.Find("language")) {
      Section l(*v, "language", base_dir);
      l.String("target", config.language.target);
      l.Real("threshold", config.language.threshold, 0.0, 1.0);
      l.String("classifier", config.language.classifier);
      l.Finish();
    }
    if (const json* v = s.Find("repetition")) {
      Section r(*v, "repetition", base_dir);
      RepetitionThresholds& t = config.repetition;
      r.Real("dup_line_frac", t.dup_line_frac, 0.0, 1.0);
      r.Real("dup_para_frac", t.dup_para_frac, 0.0, 1.0);
      r.Real("dup_line_char_frac", t.dup_line_char_frac, 0.0, 1.0);
      r.Real("dup_para_char_frac", t.dup_para_char_frac, 0.0, 1.0);
      for (int n = 2; n <= 4; ++n) {
        r.Real("top_" + std::to_string(n) + "gram_char_frac", t.top_ngram_char_frac[static_cast<std::size_t>(n - 2)],
               0.0, 1.0);
      }
      for (int n = 5; n <= 10; ++n) {
        r.Real("dup_" + std::to_string(n) + "gram_char_frac", t.dup_ngram_char_frac[static_cast<std::size_t>(n - 5)],
               0.0, 1.0);
      }
      r.Finish();
    }
    if (const json* v = s.Find("quality")) {
      Section q(*v, "quality", base_dir);
      QualityThresholds& t = config.quality;
      q.Unsigned("min_words", t.min_words);
      q.Unsigned("max_words", t.max_words);
      q.Real("min_mean_word_length", t.min_mean_word_length, 0.0, 1e9);
      q.Real("max_mean_word_length", t.max_mean_word_length, 0.0, 1e9);
      q.Real("max_symbol_word_ratio", t.max_symbol_word_ratio, 0.0, 1e9);
      q.Real("max_bullet_line_frac", t.max_bullet_line_frac, 0.0, 1.0);
      q.Real("max_ellipsis_line_frac", t.max_ellipsis_line_frac, 0.0, 1.0);
      q.Real("min_alpha_word_frac", t.min_alpha_word_frac, 0.0, 1.0);
      q.Unsigned("min_stopword_hits", t.min_stopword_hits);
      q.Finish();
    }
    if (const json* v = s.Find("line_corrections")) {
      Section l(*v, "line_corrections", base_dir);
      l.File("patterns_file", config.line_corrections.patterns_file);
      l.Real("budget", config.line_corrections.budget, 0.0, 1.0, true);
      l.Finish();
    }
    if (const json* v = s.Find("fuzzy_dedup")) {
      Section f(*v, "fuzzy_dedup", base_dir);
      f.Unsigned("n", config.fuzzy.params.n, 1);
      f.Unsigned("b", config.fuzzy.params.b, 1);
      f.Unsigned("r", config.fuzzy.params.r, 1);
      f.Unsigned("seed", config.fuzzy.params.seed);
      std::string policy = "smallest-id";
      f.String("survivor_policy", policy);
      if (policy == "smallest-id") {
        config.fuzzy.policy = SurvivorPolicy::kSmallestId;
      } else if (policy == "seeded-random") {
        config.fuzzy.policy = SurvivorPolicy::kSeededRandom;
      } else {
        Fail("fuzzy_dedup.survivor_policy", "expected 'smallest-id' or 'seeded-random'");
      }
      f.File("write_signatures", config.fuzzy.write_signatures);
      f.File("read_signatures", config.fuzzy.read_signatures);
      f.Finish();
    }
    if (const json* v = s.Find("exact_dedup")) {
      Section e(*v, "exact_dedup", base_dir);
      e.Unsigned("min_match", config.exact.min_match, 1);
      std::string strategy(StrategyName(config.exact.strategy));
      e.String("strategy", strategy);
      const auto parsed = ParseStrategy(strategy);
      if (!parsed) Fail("exact_dedup.strategy", "expected cut, mask, drop-partial or drop-any");
      config.exact.strategy = *parsed;
      e.Real("drop_partial_threshold", config.exact.options.drop_partial_threshold, 0.0, 1.0);
      e.Unsigned("min_remaining_chars", config.exact.options.min_remaining_chars);
      e.File("mask_output", config.exact.mask_output);
      e.Finish();
    }
    s.Finish();
  }
  ValidateConfig(config);
  return config;
}

PipelineConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfigError, "cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ParseConfig(text.str(), path.parent_path());
}

void ValidateConfig(const PipelineConfig& config) {
  if (config.parts == 0) Fail("parts", "must be at least 1");
  if (config.part >= config.parts) Fail("part", "must be smaller than parts");
  if (config.output.empty()) Fail("output", "is required");
  if (config.stages.empty() || config.stages.front() != Stage::kIngest) Fail("stages", "must start with 'ingest'");
  for (std::size_t i = 1; i < config.stages.size(); ++i) {
    if (static_cast<int>(config.stages[i]) <= static_cast<int>(config.stages[i - 1])) {
      Fail("stages", "stages must follow the canonical order");
    }
  }
  if (config.quality.min_words > config.quality.max_words) Fail("quality", "min_words exceeds max_words");
  if (config.quality.min_mean_word_length > config.quality.max_mean_word_length) {
    Fail("quality", "min_mean_word_length exceeds max_mean_word_length");
  }
  if (!(config.line_corrections.budget > 0.0 && config.line_corrections.budget <= 1.0)) {
    Fail("line_corrections.budget", "must lie in (0, 1]");
  }
  if (config.fuzzy.params.n == 0 || config.fuzzy.params.b == 0 || config.fuzzy.params.r == 0) {
    Fail("fuzzy_dedup", "n, b and r must be positive");
  }
  if (config.exact.min_match == 0) Fail("exact_dedup.min_match", "must be at least 1");
  if (config.language.classifier != "builtin" && config.language.classifier.rfind("external:", 0) != 0) {
    Fail("language.classifier", "expected 'builtin' or 'external:<command>'");
  }
  if (config.extractor != "baseline" && config.extractor.rfind("external:", 0) != 0) {
    Fail("extractor", "expected 'baseline' or 'external:<command>'");
  }
}

unsigned DefaultWorkerCount() {
  if (const char* env = std::getenv("REFINERY_WORKERS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0 && value <= 4096) return static_cast<unsigned>(value);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace refinery
