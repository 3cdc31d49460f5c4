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

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "refinery/error.hpp"
#include "refinery/pipeline.hpp"
#include "refinery/records.hpp"
#include "testing.hpp"

namespace refinery {
namespace {

namespace fs = std::filesystem;

template <typename Fn>
ErrorCode CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIoError;
}

std::vector<Document> Docs(const std::string& jsonl) {
  std::istringstream in(jsonl);
  return ReadRecords(in);
}

// ---------------------------------------------------------------------------
// Stages and configuration
// ---------------------------------------------------------------------------

TEST(StageTest, NamesAndUnits) {
  for (Stage s : kCanonicalStages) EXPECT_EQ(ParseStage(StageName(s)), s);
  EXPECT_FALSE(ParseStage("minhash").has_value());
  EXPECT_FALSE(IsTokenStage(Stage::kLineCorrections));
  EXPECT_TRUE(IsTokenStage(Stage::kFuzzyDedup));
  EXPECT_TRUE(IsTokenStage(Stage::kExactDedup));
}

TEST(ConfigTest, ParsesFullDocument) {
  const PipelineConfig c = ParseConfig(R"({
    "dump_id": "CC-2023-06",
    "inputs": ["crawl/*.warc.gz"],
    "output": "out/part0.jsonl",
    "report": "/abs/report.json",
    "part": 1, "parts": 4, "seed": 9, "workers": 3,
    "stages": ["ingest", "url_filter", "extract", "quality", "fuzzy_dedup"],
    "language": {"threshold": 0.5},
    "quality": {"min_words": 10},
    "fuzzy_dedup": {"b": 10, "r": 30, "survivor_policy": "seeded-random"},
    "exact_dedup": {"min_match": 20, "strategy": "drop-partial", "drop_partial_threshold": 0.3}
  })",
                                       "/base");
  ASSERT_EQ(c.inputs.size(), 1u);
  EXPECT_EQ(c.inputs[0].dump_id, "CC-2023-06");
  EXPECT_EQ(c.output, fs::path("/base/out/part0.jsonl"));
  EXPECT_EQ(c.report, fs::path("/abs/report.json"));
  EXPECT_EQ(c.part, 1u);
  EXPECT_EQ(c.parts, 4u);
  EXPECT_EQ(c.workers, 3u);
  EXPECT_TRUE(c.enabled(Stage::kQuality));
  EXPECT_FALSE(c.enabled(Stage::kLanguage));
  EXPECT_DOUBLE_EQ(c.language.threshold, 0.5);
  EXPECT_EQ(c.quality.min_words, 10u);
  EXPECT_EQ(c.fuzzy.params.b, 10u);
  EXPECT_EQ(c.fuzzy.params.n, 5u);
  EXPECT_EQ(c.fuzzy.policy, SurvivorPolicy::kSeededRandom);
  EXPECT_EQ(c.exact.strategy, DedupStrategy::kDropPartial);
  EXPECT_DOUBLE_EQ(c.exact.options.drop_partial_threshold, 0.3);
}

TEST(ConfigTest, RejectsBadDocuments) {
  const std::vector<std::string> bad = {
      R"({"output": "o", "mystery": 1})",
      R"({"output": "o", "language": {"treshold": 0.5}})",
      R"({"output": 5})",
      R"({"output": "o", "stages": ["ingest", "quality", "language"]})",
      R"({"output": "o", "stages": ["url_filter"]})",
      R"({"output": "o", "stages": ["ingest", "dedupe"]})",
      R"({"output": "o", "language": {"threshold": 1.5}})",
      R"({"output": "o", "fuzzy_dedup": {"b": 0}})",
      R"({"output": "o", "exact_dedup": {"strategy": "shred"}})",
      R"({"output": "o", "input_format": "csv"})",
      R"({"output": "o", "parts": 0})",
      R"({"output": "o", "part": -1})",
      "{not json",
  };
  for (const std::string& text : bad) EXPECT_EQ(CodeOf([&] { ParseConfig(text); }), ErrorCode::kConfigError) << text;
}

TEST(ConfigTest, ValidateCatchesInconsistencies) {
  PipelineConfig c;
  c.output = "o.jsonl";
  c.inputs = {{"d", {"x.warc"}}};
  ValidateConfig(c);
  c.part = 1;
  EXPECT_EQ(CodeOf([&] { ValidateConfig(c); }), ErrorCode::kConfigError);
  c.part = 0;
  c.output.clear();
  EXPECT_EQ(CodeOf([&] { ValidateConfig(c); }), ErrorCode::kConfigError);
}

TEST(ConfigTest, LoadResolvesAgainstFileDirectory) {
  testing::TempDir dir;
  testing::WriteFile(dir / "conf" / "run.json", R"({"output": "out.jsonl", "inputs": ["in"]})");
  const PipelineConfig c = LoadConfig(dir / "conf" / "run.json");
  EXPECT_EQ(c.output, dir / "conf" / "out.jsonl");
  EXPECT_EQ(c.inputs.at(0).paths.at(0), (dir / "conf" / "in").string());
  EXPECT_EQ(CodeOf([&] { LoadConfig(dir / "missing.json"); }), ErrorCode::kConfigError);
}

// ---------------------------------------------------------------------------
// Sharding and registry
// ---------------------------------------------------------------------------

TEST(ShardPlanTest, PartsPartitionOrdinals) {
  for (std::uint32_t parts : {1u, 2u, 3u, 7u}) {
    const ShardPlan plan = PlanShards({{"a", 100}, {"b", 17}}, parts);
    for (std::uint64_t size : {0ull, 1ull, 17ull, 100ull}) {
      std::vector<std::uint64_t> counts(parts, 0);
      for (std::uint64_t i = 0; i < size; ++i) ++counts.at(plan.PartOf("a", i));
      EXPECT_EQ(counts, plan.PartSizes(size));
    }
  }
  EXPECT_EQ(CodeOf([] { ShardPlan(0); }), ErrorCode::kConfigError);
}

TEST(RegistryTest, LoadCommitReload) {
  testing::TempDir dir;
  const fs::path path = dir / "reg.txt";
  KeptUrlRegistry reg = KeptUrlRegistry::Load(path);
  EXPECT_EQ(reg.size(), 0u);
  reg.CommitPart({CanonicalUrl("https://Example.com/A"), CanonicalUrl("http://b.org/")}, path);
  const KeptUrlRegistry again = KeptUrlRegistry::Load(path);
  EXPECT_EQ(again.size(), 2u);
  EXPECT_TRUE(again.Contains("example.com/a"));
  EXPECT_TRUE(UrlDedupGate("http://EXAMPLE.com/A", again).rejected());
  EXPECT_EQ(UrlDedupGate("https://example.com/A", again).reason(), RejectReason::kUrlRevisit);
  EXPECT_TRUE(UrlDedupGate("https://example.com/B", again).kept());
  fs::create_directories(dir / "not-a-file");
  EXPECT_EQ(CodeOf([&] { KeptUrlRegistry::Load(dir / "not-a-file"); }), ErrorCode::kRegistryUnavailable);
}

TEST(RegistryTest, CanonicalUrlFallsBackToLowercase) {
  EXPECT_EQ(CanonicalUrl("HTTPS://www.Example.com/Path"), "www.example.com/path");
  EXPECT_EQ(CanonicalUrl("Not A URL"), "not a url");
}

// ---------------------------------------------------------------------------
// Running parts
// ---------------------------------------------------------------------------

struct MiniRun {
  PartResult result;
  std::string output;
  std::string report;
  std::vector<nlohmann::json> rejects;
};

MiniRun RunMini(const testing::MiniWarc& fx, const fs::path& dir, unsigned workers) {
  MiniRun run;
  run.result = RunPart(testing::MiniWarcConfig(fx, dir, workers));
  run.output = testing::ReadFile(dir / "out.jsonl");
  run.report = testing::ReadFile(dir / "report.json");
  std::istringstream in(testing::ReadFile(dir / "rejects.jsonl"));
  std::string line;
  while (std::getline(in, line)) run.rejects.push_back(nlohmann::json::parse(line));
  return run;
}

class MiniWarcTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new testing::TempDir;
    fixture_ = new testing::MiniWarc(testing::WriteMiniWarc(dir_->path() / "fixture"));
    run_ = new MiniRun(RunMini(*fixture_, dir_->path() / "run1", 1));
  }
  static void TearDownTestSuite() {
    delete run_;
    delete fixture_;
    delete dir_;
  }

  static testing::TempDir* dir_;
  static testing::MiniWarc* fixture_;
  static MiniRun* run_;
};

testing::TempDir* MiniWarcTest::dir_ = nullptr;
testing::MiniWarc* MiniWarcTest::fixture_ = nullptr;
MiniRun* MiniWarcTest::run_ = nullptr;

TEST_F(MiniWarcTest, EveryPageMeetsItsExpectation) {
  std::map<std::string, std::string> logged;
  for (const auto& j : run_->rejects) logged[j.at("url").get<std::string>()] = j.at("reason").get<std::string>();
  std::set<std::string> written;
  for (const Document& d : Docs(run_->output)) written.insert(d.url);
  for (const auto& page : fixture_->pages) {
    if (page.malformed) {
      EXPECT_EQ(logged[page.url], "Malformed") << page.url;
    } else if (page.reason) {
      EXPECT_EQ(logged[page.url], RejectReasonName(*page.reason)) << page.url;
    } else {
      EXPECT_TRUE(written.contains(page.url)) << page.url;
    }
  }
  EXPECT_EQ(written.size(), fixture_->survivors());
}

TEST_F(MiniWarcTest, OneRejectionPerReason) {
  ASSERT_EQ(run_->result.rejections.size(), static_cast<std::size_t>(kRejectReasonCount));
  for (const auto& [reason, count] : run_->result.rejections) EXPECT_EQ(count, 1u) << RejectReasonName(reason);
  EXPECT_EQ(run_->result.ingested, 15u);
  EXPECT_EQ(run_->result.malformed, 1u);
  EXPECT_EQ(run_->result.records_written, 2u);
}

TEST_F(MiniWarcTest, AccountingChains) {
  const auto& stats = run_->result.stats;
  ASSERT_EQ(stats.size(), kCanonicalStages.size());
  std::uint64_t removed = 0;
  std::uint64_t malformed = 0;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    EXPECT_EQ(stats[i].stage, StageName(kCanonicalStages[i]));
    if (i > 0) EXPECT_EQ(stats[i].docs_in, stats[i - 1].docs_out) << stats[i].stage;
    removed += stats[i].docs_in - stats[i].docs_out;
    malformed += stats[i].malformed;
  }
  EXPECT_EQ(stats.front().docs_in, 15u);
  EXPECT_EQ(stats.back().docs_out, 2u);
  EXPECT_EQ(removed, 13u);
  EXPECT_EQ(malformed, 1u);
  const auto rates = KeptRates(stats);
  EXPECT_NEAR(rates.back().cumulative_kept_rate, 2.0 / 15.0, 1e-12);
}

TEST_F(MiniWarcTest, DeterministicAcrossRunsAndWorkerCounts) {
  const MiniRun again = RunMini(*fixture_, dir_->path() / "run2", 1);
  const MiniRun wide = RunMini(*fixture_, dir_->path() / "run8", 8);
  EXPECT_EQ(again.output, run_->output);
  EXPECT_EQ(wide.output, run_->output);
  EXPECT_EQ(wide.report, run_->report);
}

TEST_F(MiniWarcTest, RegistryGrowsBySurvivors) {
  const KeptUrlRegistry before = KeptUrlRegistry::Load(fixture_->registry_seed);
  const KeptUrlRegistry after = KeptUrlRegistry::Load(dir_->path() / "run1" / "registry.txt");
  EXPECT_EQ(after.size(), before.size() + 2);
  for (const Document& d : Docs(run_->output)) EXPECT_TRUE(after.Contains(CanonicalUrl(d.url)));
}

TEST_F(MiniWarcTest, ReportRoundTrips) {
  const PartResult parsed = ParseReport(run_->report);
  EXPECT_EQ(parsed.stats, run_->result.stats);
  EXPECT_EQ(parsed.rejections, run_->result.rejections);
  EXPECT_EQ(parsed.records_written, run_->result.records_written);
  const std::string table = EmitReport(run_->result, ReportFormat::kTable);
  // Document rows up to line_corrections, then token rows.
  EXPECT_NE(table.find("0.2667"), std::string::npos) << table;
  EXPECT_NE(table.find("tokens"), std::string::npos);
}

TEST_F(MiniWarcTest, PartsSplitDocumentsAndShareRegistry) {
  const fs::path dir = dir_->path() / "parts";
  PipelineConfig p0 = testing::MiniWarcConfig(*fixture_, dir, 2);
  p0.parts = 2;
  p0.output = dir / "p0.jsonl";
  PipelineConfig p1 = p0;
  p1.part = 1;
  p1.output = dir / "p1.jsonl";
  const PartResult r0 = RunPart(p0);
  const PartResult r1 = RunPart(p1);
  EXPECT_EQ(r0.ingested + r1.ingested, 15u);
  std::set<std::string> ids;
  for (const auto& path : {p0.output, p1.output}) {
    for (const Document& d : Docs(testing::ReadFile(path))) EXPECT_TRUE(ids.insert(d.id).second) << d.id;
  }
  const KeptUrlRegistry reg = KeptUrlRegistry::Load(*p0.registry);
  for (const auto& path : {p0.output, p1.output}) {
    for (const Document& d : Docs(testing::ReadFile(path))) EXPECT_TRUE(reg.Contains(CanonicalUrl(d.url)));
  }
}

TEST(RunPartTest, RecordsInputAndStageSubset) {
  testing::TempDir dir;
  std::vector<Document> docs;
  for (int i = 0; i < 3; ++i) {
    Document d;
    d.id = "d/" + std::to_string(i);
    d.url = "https://example.com/" + std::to_string(i);
    d.dump_id = "d";
    d.content = i == 2 ? std::string("too short") : testing::CleanEnglishText();
    docs.push_back(d);
  }
  std::ostringstream out;
  WriteRecords(docs, out);
  testing::WriteFile(dir / "in.jsonl", out.str() + "{broken\n");
  PipelineConfig c;
  c.inputs = {{"d", {(dir / "in.jsonl").string()}}};
  c.input_format = InputFormat::kRecords;
  c.output = dir / "out.jsonl";
  c.workers = 2;
  c.stages = {Stage::kIngest, Stage::kQuality, Stage::kFuzzyDedup};
  const PartResult r = RunPart(c);
  EXPECT_EQ(r.ingested, 4u);
  EXPECT_EQ(r.malformed, 1u);
  EXPECT_EQ(r.rejections.at(RejectReason::kQuality), 1u);
  EXPECT_EQ(r.rejections.at(RejectReason::kFuzzyDuplicate), 1u);
  const auto kept = Docs(testing::ReadFile(dir / "out.jsonl"));
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].id, "d/0");
}

TEST(RunPartTest, CorruptWarcIsMalformedNotFatal) {
  testing::TempDir dir;
  testing::WriteFile(dir / "bad.warc", "this is not a warc file at all\r\n\r\n");
  PipelineConfig c;
  c.inputs = {{"d", {(dir / "bad.warc").string()}}};
  c.output = dir / "out.jsonl";
  const PartResult r = RunPart(c);
  EXPECT_EQ(r.ingested, 1u);
  EXPECT_EQ(r.malformed, 1u);
  EXPECT_EQ(r.records_written, 0u);
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_NE(r.errors[0].message.find("BadMagic"), std::string::npos);

  c.inputs = {{"d", {(dir / "absent.warc").string()}}};
  EXPECT_EQ(CodeOf([&] { RunPart(c); }), ErrorCode::kIoError);
}

TEST(ReportTest, FormatRate) {
  EXPECT_EQ(FormatRate(1.0), "1.000");
  EXPECT_EQ(FormatRate(2.0 / 15.0), "0.1333");
  EXPECT_EQ(FormatRate(1.0 / 7.0), "0.1429");
  EXPECT_EQ(FormatRate(0.0), "0.000");
}

TEST(ReportTest, BrokenChainIsRejected) {
  StageStats a;
  a.stage = "ingest";
  a.docs_in = 10;
  a.docs_out = 8;
  StageStats b;
  b.stage = "quality";
  b.docs_in = 7;
  b.docs_out = 7;
  const std::vector<StageStats> stats = {a, b};
  EXPECT_EQ(CodeOf([&] { EmitReport(stats, ReportFormat::kJson); }), ErrorCode::kChainBroken);
}

// ---------------------------------------------------------------------------
// Command line
// ---------------------------------------------------------------------------

#ifdef REFINERY_CLI
int Cli(const std::string& args) {
  const std::string cmd = std::string(REFINERY_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(CliTest, ExitCodes) {
  testing::TempDir dir;
  const testing::MiniWarc fx = testing::WriteMiniWarc(dir / "fx");
  const std::string out = (dir / "out.jsonl").string();
  const std::string report = (dir / "report.json").string();
  EXPECT_EQ(Cli("run " + fx.warc.string() + " -o " + out + " --report " + report + " --blocklist-dir " +
                fx.blocklist_dir.string() + " -q"),
            0);
  EXPECT_FALSE(Docs(testing::ReadFile(out)).empty());
  EXPECT_EQ(Cli("report " + report + " --format json"), 0);
  EXPECT_EQ(Cli("lsh-curve -b 20 -r 450"), 0);
  EXPECT_EQ(Cli("run --no-such-flag"), 2);
  EXPECT_EQ(Cli("lsh-curve --from 2"), 2);
  testing::WriteFile(dir / "bad.json", R"({"output": "o", "typo": 1})");
  EXPECT_EQ(Cli("run -c " + (dir / "bad.json").string()), 2);
  // A corrupt record is counted as malformed; a missing input stops the run.
  testing::WriteFile(dir / "bad.warc", "garbage\r\n\r\n");
  EXPECT_EQ(Cli("ingest " + (dir / "bad.warc").string() + " -o " + out + " -q"), 0);
  EXPECT_EQ(Cli("ingest " + (dir / "nothing.warc").string() + " -o " + out + " -q"), 3);
  EXPECT_EQ(Cli("report " + (dir / "missing.json").string()), 3);
}

TEST(CliTest, SubcommandsChain) {
  testing::TempDir dir;
  const testing::MiniWarc fx = testing::WriteMiniWarc(dir / "fx");
  const auto p = [&](std::string_view name) { return (dir / name).string(); };
  ASSERT_EQ(Cli("ingest " + fx.warc.string() + " --blocklist-dir " + fx.blocklist_dir.string() + " -o " +
                p("a.jsonl") + " -q"),
            0);
  ASSERT_EQ(Cli("filter " + p("a.jsonl") + " -o " + p("b.jsonl") + " -q"), 0);
  ASSERT_EQ(Cli("dedup-fuzzy " + p("b.jsonl") + " -o " + p("c.jsonl") + " -q"), 0);
  ASSERT_EQ(Cli("dedup-exact " + p("c.jsonl") + " -o " + p("d.jsonl") + " -q"), 0);
  const auto a = Docs(testing::ReadFile(p("a.jsonl")));
  const auto d = Docs(testing::ReadFile(p("d.jsonl")));
  EXPECT_EQ(a.size(), 8u);
  // Without --registry the archived page is not a revisit; it comes first in
  // the crawl, so it survives fuzzy dedup in place of garden/basics.
  std::vector<std::string> urls;
  for (const Document& doc : d) urls.push_back(doc.url);
  EXPECT_EQ(urls, (std::vector<std::string>{"https://www.greenfields-journal.com/archive/2019",
                                            "https://www.riverside-cycling.org/routes"}));
}
#endif

}  // namespace
}  // namespace refinery
