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

#include "refinery/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "refinery/error.hpp"
#include "refinery/lang_id.hpp"
#include "refinery/records.hpp"
#include "refinery/resources.hpp"
#include "refinery/text_extract.hpp"
#include "refinery/url_filter.hpp"
#include "refinery/warc.hpp"

namespace refinery {
namespace {

constexpr std::size_t kBatchSize = 256;

// Runs fn(i) for i in [0, n) on up to `workers` threads.
template <typename Fn>
void ParallelFor(std::size_t n, unsigned workers, Fn&& fn) {
  if (n == 0) return;
  const std::size_t threads = std::min<std::size_t>(std::max(1u, workers), n);
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        try {
          for (std::size_t i = next++; i < n; i = next++) fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::unordered_set<std::string> ReadLineSet(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfigError, "cannot read " + path.string());
  std::unordered_set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos || line[begin] == '#') continue;
    const auto end = line.find_last_not_of(" \t\r");
    std::string entry = line.substr(begin, end - begin + 1);
    std::transform(entry.begin(), entry.end(), entry.begin(), [](unsigned char c) { return std::tolower(c); });
    out.insert(std::move(entry));
  }
  return out;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kConfigError, "cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Immutable after construction; shared by all workers.
struct Resources {
  UrlFilterResources url;
  std::unique_ptr<Extractor> extractor;
  std::unique_ptr<LanguageClassifier> external_language;
  const LanguageClassifier* language = nullptr;
  LineRuleSet line_rules;
  KeptUrlRegistry registry;
};

std::unique_ptr<Resources> LoadResources(const PipelineConfig& config) {
  auto res = std::make_unique<Resources>();
  if (config.enabled(Stage::kUrlFilter)) {
    const UrlFilterConfig& u = config.url_filter;
    if (u.blocklist_dir) {
      res->url.blocklist = LoadBlocklist(*u.blocklist_dir, u.categories.empty() ? resources::BlockCategories()
                                                                                 : u.categories);
    }
    if (u.allowlist_file) res->url.blocklist.allowlist = ReadLineSet(*u.allowlist_file);
    res->url.word_lists = u.wordlists_dir ? LoadWordLists(*u.wordlists_dir, u.soft_threshold)
                                          : resources::DefaultWordLists();
    res->url.word_lists.soft_threshold = u.soft_threshold;
    res->url.hq_domains = u.hq_domains_file ? ReadLineSet(*u.hq_domains_file) : resources::HqDomains();
  }
  if (config.enabled(Stage::kExtract)) res->extractor = MakeExtractor(config.extractor);
  if (config.enabled(Stage::kLanguage)) {
    if (config.language.classifier == "builtin") {
      res->language = &TrigramClassifier::Builtin();
    } else {
      res->external_language =
          std::make_unique<ExternalLanguageClassifier>(config.language.classifier.substr(std::string("external:").size()));
      res->language = res->external_language.get();
    }
  }
  if (config.enabled(Stage::kLineCorrections)) {
    res->line_rules = LineRuleSet::Default();
    res->line_rules.doc_discard_budget = config.line_corrections.budget;
    if (config.line_corrections.patterns_file) {
      res->line_rules.patterns = ParseLinePatterns(ReadFile(*config.line_corrections.patterns_file));
    }
  }
  if (config.registry) res->registry = KeptUrlRegistry::Load(*config.registry);
  return res;
}

// One input record on its way through the document-level stages.
struct Item {
  Document doc;
  std::string html;
  bool malformed = false;  // unreadable input record
  std::string malformed_message;
  // Position in the stage list where the item was removed, or npos.
  std::size_t removed_at = std::string::npos;
  std::optional<RejectReason> reason;
  bool removed_malformed = false;
  // Payload bytes entering and leaving each stage it reached.
  std::vector<std::uint64_t> bytes_in;
  std::vector<std::uint64_t> bytes_out;
  std::vector<DocumentError> errors;
};

RejectReason FallbackReason(Stage stage) {
  switch (stage) {
    case Stage::kExtract:
      return RejectReason::kExtractionEmpty;
    case Stage::kLanguage:
      return RejectReason::kLanguageScore;
    case Stage::kRepetition:
      return RejectReason::kRepetition;
    case Stage::kQuality:
      return RejectReason::kQuality;
    case Stage::kLineCorrections:
      return RejectReason::kLineCorrectionBudget;
    default:
      return RejectReason::kUrlWordScore;
  }
}

std::string ScoreLabel(const std::vector<LanguageScore>& scores) {
  if (scores.empty()) return "none";
  std::ostringstream s;
  s << scores.front().language << ':' << FormatRate(scores.front().score);
  return s.str();
}

class DocumentStages {
 public:
  DocumentStages(const PipelineConfig& config, const Resources& res, std::vector<Stage> stages)
      : config_(config), res_(res), stages_(std::move(stages)) {}

  void Run(Item& item) const {
    for (std::size_t pos = 0; pos < stages_.size(); ++pos) {
      const Stage stage = stages_[pos];
      const std::uint64_t in = Payload(item);
      item.bytes_in.push_back(in);
      bool keep = true;
      try {
        keep = Apply(stage, item);
      } catch (const std::exception& e) {
        item.errors.push_back({item.doc.id, std::string(StageName(stage)), e.what()});
        item.reason = FallbackReason(stage);
        keep = false;
      }
      if (!keep) {
        item.removed_at = pos;
        return;
      }
      item.bytes_out.push_back(Payload(item));
    }
  }

 private:
  static std::uint64_t Payload(const Item& item) { return item.html.empty() ? item.doc.content.size() : item.html.size(); }

  bool Reject(Item& item, RejectReason reason) const {
    item.reason = reason;
    return false;
  }

  bool Apply(Stage stage, Item& item) const {
    Document& doc = item.doc;
    switch (stage) {
      case Stage::kIngest:
        if (item.malformed) {
          item.removed_malformed = true;
          return false;
        }
        return true;
      case Stage::kUrlFilter: {
        const UrlVerdict v = UrlGate(doc.url, res_.url);
        if (v.malformed) {
          item.removed_malformed = true;
          item.errors.push_back({doc.id, "url_filter", "unparsable URL '" + doc.url + "'"});
          return false;
        }
        if (!v.keep) return Reject(item, v.reason.value_or(RejectReason::kUrlBlocklisted));
        return true;
      }
      case Stage::kUrlDedup: {
        const Verdict v = UrlDedupGate(doc.url, res_.registry);
        return v.kept() || Reject(item, v.reason());
      }
      case Stage::kExtract: {
        ExtractionResult r = ExtractAndFormat(*res_.extractor, item.html);
        item.html.clear();
        item.html.shrink_to_fit();
        doc.content = std::move(r.text);
        if (r.discarded) return Reject(item, RejectReason::kExtractionEmpty);
        return true;
      }
      case Stage::kLanguage: {
        if (doc.content.empty()) return Reject(item, RejectReason::kLanguageScore);
        const std::vector<LanguageScore> scores = res_.language->Classify(doc.content);
        doc.annotations["language"] = ScoreLabel(scores);
        const Verdict v = LanguageGateScores(scores, config_.language.target, config_.language.threshold);
        return v.kept() || Reject(item, v.reason());
      }
      case Stage::kRepetition: {
        const Verdict v = RepetitionGate(ComputeRepetitionProfile(doc.content), config_.repetition);
        return v.kept() || Reject(item, v.reason());
      }
      case Stage::kQuality: {
        const Verdict v = QualityGate(ComputeQualityProfile(doc.content), config_.quality);
        return v.kept() || Reject(item, v.reason());
      }
      case Stage::kLineCorrections: {
        LineCorrection c = CorrectLines(doc.content, res_.line_rules);
        if (c.rejected) return Reject(item, RejectReason::kLineCorrectionBudget);
        if (!c.removed_lines.empty()) {
          doc.annotations["line_corrections"] = "removed_lines=" + std::to_string(c.removed_lines.size());
        }
        doc.content = std::move(c.content);
        return true;
      }
      case Stage::kFuzzyDedup:
      case Stage::kExactDedup:
        break;
    }
    return true;
  }

  const PipelineConfig& config_;
  const Resources& res_;
  std::vector<Stage> stages_;
};

std::string DocId(const std::string& dump_id, std::uint64_t ordinal) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%010llu", static_cast<unsigned long long>(ordinal));
  return dump_id + "/" + buf;
}

// Streams the part's records in input order, in batches.
class PartReader {
 public:
  PartReader(const PipelineConfig& config, const ShardPlan& plan) : config_(config), plan_(plan) {
    for (const InputGroup& group : config.inputs) {
      const auto files = ExpandWarcInputs(group.paths);
      if (files.empty()) {
        throw Error(ErrorCode::kIoError, "no input files match for dump '" + group.dump_id + "'");
      }
      for (const auto& f : files) files_.push_back({group.dump_id, f});
    }
    if (files_.empty()) throw Error(ErrorCode::kIoError, "no inputs configured");
  }

  // Appends up to `max` items; false once the inputs are exhausted.
  bool NextBatch(std::vector<Item>& out, std::size_t max) {
    while (out.size() < max) {
      const bool open = Open();
      Flush(out);
      if (!open) return false;
      if (config_.input_format == InputFormat::kWarc) {
        ReadWarc(out, max);
      } else {
        ReadRecordsFile(out, max);
      }
    }
    return true;
  }

  std::map<std::string, std::uint64_t> skipped() const {
    return {{"non_response", counts_.skipped_type},
            {"non_2xx", counts_.skipped_status},
            {"non_html", counts_.skipped_content_type},
            {"no_target_uri", counts_.skipped_no_uri}};
  }

 private:
  struct InputFile {
    std::string dump_id;
    std::filesystem::path path;
  };

  bool Open() {
    while (!stream_) {
      if (next_file_ >= files_.size()) return false;
      current_ = files_[next_file_++];
      stream_ = std::make_unique<std::ifstream>(current_.path, std::ios::binary);
      if (!*stream_) throw Error(ErrorCode::kIoError, "cannot open " + current_.path.string());
      if (config_.input_format == InputFormat::kWarc) {
        try {
          warc_ = std::make_unique<WarcReader>(*stream_);
        } catch (const Error& e) {
          AddMalformed(current_.path.string() + ": " + e.what());
          Close();
        }
      } else {
        records_ = std::make_unique<RecordReader>(*stream_);
      }
    }
    return true;
  }

  void Close() {
    warc_.reset();
    records_.reset();
    stream_.reset();
  }

  // Returns true if the ordinal belongs to this part.
  bool Claim(std::uint64_t& ordinal_out) {
    const std::uint64_t ordinal = ordinals_[current_.dump_id]++;
    ordinal_out = ordinal;
    return plan_.PartOf(current_.dump_id, ordinal) == config_.part;
  }

  void AddMalformed(const std::string& message) {
    std::uint64_t ordinal = 0;
    if (!Claim(ordinal)) return;
    Item item;
    item.malformed = true;
    item.malformed_message = message;
    item.doc.id = DocId(current_.dump_id, ordinal);
    item.doc.dump_id = current_.dump_id;
    item.doc.part_id = config_.part;
    pending_.push_back(std::move(item));
  }

  void ReadWarc(std::vector<Item>& out, std::size_t max) {
    while (out.size() < max) {
      std::optional<WarcRecord> record;
      try {
        record = warc_->Next();
      } catch (const Error& e) {
        AddMalformed(current_.path.string() + ": " + e.what());
        Flush(out);
        Close();
        return;
      }
      if (!record) {
        Close();
        return;
      }
      std::optional<Candidate> cand = ToCandidate(*record, counts_);
      if (!cand) continue;
      std::uint64_t ordinal = 0;
      if (!Claim(ordinal)) continue;
      Item item;
      item.doc.id = DocId(current_.dump_id, ordinal);
      item.doc.url = std::move(cand->url);
      item.doc.dump_id = current_.dump_id;
      item.doc.part_id = config_.part;
      item.html = std::move(cand->html);
      out.push_back(std::move(item));
    }
  }

  void ReadRecordsFile(std::vector<Item>& out, std::size_t max) {
    while (out.size() < max) {
      const std::size_t errors_before = records_->errors().size();
      std::optional<Document> doc = records_->Next();
      for (std::size_t e = errors_before; e < records_->errors().size(); ++e) {
        const MalformedLine& bad = records_->errors()[e];
        AddMalformed(current_.path.string() + ":" + std::to_string(bad.line_number) + ": " + bad.message);
      }
      Flush(out);
      if (!doc) {
        Close();
        return;
      }
      std::uint64_t ordinal = 0;
      if (!Claim(ordinal)) continue;
      Item item;
      item.doc = std::move(*doc);
      if (item.doc.dump_id.empty()) item.doc.dump_id = current_.dump_id;
      item.doc.part_id = config_.part;
      out.push_back(std::move(item));
    }
  }

  void Flush(std::vector<Item>& out) {
    for (Item& item : pending_) out.push_back(std::move(item));
    pending_.clear();
  }

  const PipelineConfig& config_;
  const ShardPlan& plan_;
  std::vector<InputFile> files_;
  std::size_t next_file_ = 0;
  InputFile current_;
  std::unique_ptr<std::ifstream> stream_;
  std::unique_ptr<WarcReader> warc_;
  std::unique_ptr<RecordReader> records_;
  std::map<std::string, std::uint64_t> ordinals_;
  std::vector<Item> pending_;
  CandidateCounts counts_;
};

std::size_t CountDedupTokens(std::string_view text) { return NormalizeForDedup(text).size(); }

void WriteAtomically(const std::filesystem::path& path, const std::string& data) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kSinkError, "cannot write " + tmp.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::kSinkError, "write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

class Accounting {
 public:
  explicit Accounting(const std::vector<Stage>& stages) {
    for (Stage s : stages) {
      StageStats st;
      st.stage = std::string(StageName(s));
      stats_.push_back(std::move(st));
    }
  }

  void AddItem(const Item& item, PartResult& result) {
    for (std::size_t pos = 0; pos < item.bytes_in.size(); ++pos) {
      StageStats& s = stats_[pos];
      ++s.docs_in;
      s.bytes_in += item.bytes_in[pos];
      if (pos < item.bytes_out.size()) {
        ++s.docs_out;
        s.bytes_out += item.bytes_out[pos];
      }
    }
    if (item.removed_at != std::string::npos) {
      if (item.removed_malformed) {
        ++stats_[item.removed_at].malformed;
        ++result.malformed;
      } else if (item.reason) {
        ++result.rejections[*item.reason];
      }
    }
    for (const DocumentError& e : item.errors) result.errors.push_back(e);
    if (item.malformed) result.errors.push_back({item.doc.id, "ingest", item.malformed_message});
  }

  std::vector<StageStats>& stats() { return stats_; }

 private:
  std::vector<StageStats> stats_;
};

}  // namespace

PartResult RunPart(const PipelineConfig& input_config) {
  PipelineConfig config = input_config;
  ValidateConfig(config);
  if (config.input_format == InputFormat::kRecords) {
    std::erase(config.stages, Stage::kExtract);
  }
  const unsigned workers = config.workers != 0 ? config.workers : DefaultWorkerCount();
  const std::unique_ptr<Resources> res = LoadResources(config);
  const ShardPlan plan(config.parts);

  std::vector<Stage> doc_stages;
  std::vector<Stage> corpus_stages;
  for (Stage s : config.stages) (IsTokenStage(s) ? corpus_stages : doc_stages).push_back(s);

  PartResult result;
  Accounting accounting(doc_stages);
  const DocumentStages runner(config, *res, doc_stages);
  std::vector<Document> docs;
  std::vector<std::string> reject_log;
  auto log_reject = [&](const Document& doc, std::string_view stage, std::string_view reason) {
    if (!config.rejects) return;
    nlohmann::ordered_json j;
    j["id"] = doc.id;
    j["url"] = doc.url;
    j["stage"] = stage;
    j["reason"] = reason;
    reject_log.push_back(j.dump());
  };

  {
    PartReader reader(config, plan);
    std::vector<Item> batch;
    while (true) {
      batch.clear();
      const bool more = reader.NextBatch(batch, kBatchSize);
      ParallelFor(batch.size(), workers, [&](std::size_t i) { runner.Run(batch[i]); });
      for (Item& item : batch) {
        accounting.AddItem(item, result);
        if (item.removed_at == std::string::npos) {
          if (!item.html.empty()) item.doc.content = std::move(item.html);
          docs.push_back(std::move(item.doc));
        } else if (item.reason) {
          log_reject(item.doc, StageName(doc_stages[item.removed_at]), RejectReasonName(*item.reason));
        } else {
          log_reject(item.doc, StageName(doc_stages[item.removed_at]), "Malformed");
        }
      }
      if (!more) break;
    }
    result.skipped = reader.skipped();
  }
  result.stats = std::move(accounting.stats());
  result.ingested = result.stats.front().docs_in;

  // Corpus-level stages.
  std::vector<std::uint64_t> tokens;
  auto count_tokens = [&] {
    tokens.assign(docs.size(), 0);
    ParallelFor(docs.size(), workers, [&](std::size_t i) { tokens[i] = CountDedupTokens(docs[i].content); });
    for (std::size_t i = 0; i < docs.size(); ++i) docs[i].token_count = tokens[i];
  };
  auto sum = [](const std::vector<std::uint64_t>& v) {
    std::uint64_t s = 0;
    for (auto x : v) s += x;
    return s;
  };
  auto bytes = [](const std::vector<Document>& d) {
    std::uint64_t s = 0;
    for (const auto& x : d) s += x.content.size();
    return s;
  };
  if (!corpus_stages.empty()) count_tokens();

  for (Stage stage : corpus_stages) {
    StageStats st;
    st.stage = std::string(StageName(stage));
    st.docs_in = docs.size();
    st.tokens_in = sum(tokens);
    st.bytes_in = bytes(docs);
    std::vector<bool> keep(docs.size(), true);
    RejectReason reason = RejectReason::kFuzzyDuplicate;

    if (stage == Stage::kFuzzyDedup) {
      const MinHasher hasher(config.fuzzy.params);
      std::map<std::string, std::vector<std::uint32_t>> cached;
      if (config.fuzzy.read_signatures) {
        SignatureCache cache = ReadSignatureCache(*config.fuzzy.read_signatures);
        if (!(cache.params == config.fuzzy.params)) {
          throw Error(ErrorCode::kParamMismatch, "signature cache was built with different MinHash parameters");
        }
        for (auto& rec : cache.records) cached[rec.id] = std::move(rec.values);
      }
      const bool write_cache = config.fuzzy.write_signatures.has_value();
      std::vector<std::vector<BucketKey>> keys(docs.size());
      std::vector<SignatureRecord> sig_records(write_cache ? docs.size() : 0);
      std::vector<bool> signable(docs.size(), true);
      ParallelFor(docs.size(), workers, [&](std::size_t i) {
        MinHashSignature sig;
        if (auto it = cached.find(docs[i].id); it != cached.end()) {
          sig.params = config.fuzzy.params;
          sig.values = it->second;
        } else {
          const std::vector<std::uint64_t> hashes =
              ShingleHashes(NormalizeForDedup(docs[i].content), config.fuzzy.params.n);
          if (hashes.empty()) {
            signable[i] = false;
            return;
          }
          sig = hasher.Sign(hashes);
        }
        keys[i] = BucketKeys(sig);
        if (write_cache) sig_records[i] = {docs[i].id, std::move(sig.values)};
      });
      if (write_cache) {
        std::vector<SignatureRecord> present;
        for (std::size_t i = 0; i < docs.size(); ++i) {
          if (signable[i]) present.push_back(std::move(sig_records[i]));
        }
        WriteSignatureCache(*config.fuzzy.write_signatures, config.fuzzy.params, present);
      }
      LshIndex index(config.fuzzy.params.r);
      std::vector<std::size_t> doc_of;
      std::vector<std::string> ids;
      for (std::size_t i = 0; i < docs.size(); ++i) {
        if (!signable[i]) continue;
        index.Add(keys[i]);
        keys[i].clear();
        keys[i].shrink_to_fit();
        doc_of.push_back(i);
        ids.push_back(docs[i].id);
      }
      const DupClusters clusters = ClusterDuplicates(index);
      const std::vector<std::uint32_t> survivors = SelectSurvivors(clusters, config.fuzzy.policy, config.seed, ids);
      std::vector<bool> survivor(doc_of.size(), false);
      for (std::uint32_t s : survivors) survivor[s] = true;
      for (std::size_t h = 0; h < doc_of.size(); ++h) keep[doc_of[h]] = survivor[h];
    } else {
      reason = RejectReason::kExactDupResidue;
      std::vector<std::string_view> views;
      views.reserve(docs.size());
      for (const Document& d : docs) views.push_back(d.content);
      const TokenizedCorpus corpus = TokenizeReversible(views);
      const std::vector<DuplicateRange> ranges = FindDuplicateRanges(corpus, config.exact.min_match);
      const std::vector<std::vector<CharSpan>> spans = MapRangesToChars(corpus, ranges);
      std::vector<std::string> mask_lines;
      for (std::size_t i = 0; i < docs.size(); ++i) {
        if (spans[i].empty()) continue;
        StrategyResult r = ApplyStrategy(docs[i].content, spans[i], config.exact.strategy, config.exact.options);
        if (r.dropped) {
          keep[i] = false;
          continue;
        }
        std::size_t span_bytes = 0;
        for (const CharSpan& s : spans[i]) span_bytes += s.end - s.begin;
        docs[i].annotations["exact_dedup"] =
            std::string(StrategyName(config.exact.strategy)) + "_bytes=" + std::to_string(span_bytes);
        docs[i].content = std::move(r.content);
        if (!r.loss_mask.empty()) {
          nlohmann::ordered_json j;
          j["id"] = docs[i].id;
          nlohmann::ordered_json arr = nlohmann::ordered_json::array();
          for (const CharSpan& s : r.loss_mask) arr.push_back({s.begin, s.end});
          j["spans"] = std::move(arr);
          mask_lines.push_back(j.dump());
        }
      }
      if (config.exact.mask_output) {
        std::string data;
        for (const std::string& line : mask_lines) data += line + "\n";
        WriteAtomically(*config.exact.mask_output, data);
      }
      if (config.exact.strategy == DedupStrategy::kCut) count_tokens();
    }

    std::vector<Document> kept_docs;
    std::vector<std::uint64_t> kept_tokens;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      if (keep[i]) {
        kept_docs.push_back(std::move(docs[i]));
        kept_tokens.push_back(tokens[i]);
      } else {
        ++result.rejections[reason];
        log_reject(docs[i], st.stage, RejectReasonName(reason));
      }
    }
    docs = std::move(kept_docs);
    tokens = std::move(kept_tokens);
    st.docs_out = docs.size();
    st.tokens_out = sum(tokens);
    st.bytes_out = bytes(docs);
    result.stats.push_back(std::move(st));
  }

  std::ostringstream out;
  WriteRecords(docs, out);
  WriteAtomically(config.output, out.str());
  result.records_written = docs.size();

  if (config.rejects) {
    std::string data;
    for (const std::string& line : reject_log) data += line + "\n";
    WriteAtomically(*config.rejects, data);
  }
  if (config.report) WriteAtomically(*config.report, EmitReport(result, ReportFormat::kJson));

  if (config.registry) {
    std::vector<std::string> urls;
    urls.reserve(docs.size());
    for (const Document& d : docs) urls.push_back(CanonicalUrl(d.url));
    res->registry.CommitPart(urls, *config.registry);
  }
  return result;
}

}  // namespace refinery
