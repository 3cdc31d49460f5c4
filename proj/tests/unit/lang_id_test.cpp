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

#include <map>

#include "refinery/error.hpp"
#include "refinery/lang_id.hpp"
#include "testing.hpp"

namespace refinery {
namespace {

const TrigramClassifier& Model() { return TrigramClassifier::Builtin(); }

TEST(TrigramClassifierTest, HeldOutAccuracy) {
  const auto held_out = BundledHeldOutSamples();
  ASSERT_GE(held_out.size(), 40u);
  std::map<std::string, std::pair<int, int>> per_language;  // correct, total
  int correct = 0;
  for (const LabeledSample& s : held_out) {
    const auto scores = Model().Classify(s.text);
    const bool hit = scores.front().language == s.language;
    correct += hit;
    auto& [c, t] = per_language[s.language];
    c += hit;
    ++t;
  }
  const double accuracy = static_cast<double>(correct) / static_cast<double>(held_out.size());
  EXPECT_GE(accuracy, 0.95);
  for (const auto& [lang, ct] : per_language) EXPECT_GE(ct.first * 10, ct.second * 8) << lang;
}

TEST(TrigramClassifierTest, ScoresAreRankedDistribution) {
  const auto scores = Model().Classify("Le chat est assis sur le tapis et regarde la fenêtre.");
  ASSERT_EQ(scores.size(), Model().languages().size());
  double sum = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    sum += scores[i].score;
    if (i > 0) EXPECT_GE(scores[i - 1].score, scores[i].score);
  }
  EXPECT_NEAR(sum, 1.0, 1e-9);
  EXPECT_EQ(scores.front().language, "fr");
}

TEST(TrigramClassifierTest, CleanEnglishPageClearsThreshold) {
  const auto scores = Model().Classify(testing::CleanEnglishText());
  EXPECT_EQ(scores.front().language, "en");
  EXPECT_GE(scores.front().score, 0.65);
}

TEST(TrigramClassifierTest, TextWithoutLettersIsUniform) {
  const auto scores = Model().Classify("12 345 -- 67.8 %% 90");
  for (const auto& s : scores) EXPECT_NEAR(s.score, 1.0 / static_cast<double>(scores.size()), 1e-12);
  EXPECT_EQ(LanguageGateScores(scores).reason(), RejectReason::kLanguageScore);
}

TEST(TrigramClassifierTest, EmptyTextThrows) {
  try {
    Model().Classify("");
    FAIL() << "expected EmptyText";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyText);
  }
}

TEST(TrigramClassifierTest, TrainsOnCustomSamples) {
  const std::vector<LabeledSample> training = {{"aa", "aaaa aaa aaaaa aa"}, {"bb", "bbb bbbb bb bbbbb"}};
  const TrigramClassifier model(training);
  EXPECT_EQ(model.languages().size(), 2u);
  EXPECT_EQ(model.Classify("aaa aa").front().language, "aa");
  EXPECT_EQ(model.Classify("bb bbb").front().language, "bb");
}

TEST(LanguageGateTest, ThresholdIsInclusiveAndScoreComesFirst) {
  const std::vector<LanguageScore> at = {{"en", 0.65}, {"fr", 0.35}};
  EXPECT_TRUE(LanguageGateScores(at).kept());
  const std::vector<LanguageScore> below = {{"en", 0.6499}, {"fr", 0.3501}};
  EXPECT_EQ(LanguageGateScores(below).reason(), RejectReason::kLanguageScore);
  const std::vector<LanguageScore> confident_french = {{"fr", 0.99}, {"en", 0.01}};
  EXPECT_EQ(LanguageGateScores(confident_french).reason(), RejectReason::kLanguageMismatch);
  const std::vector<LanguageScore> unsure_french = {{"fr", 0.5}, {"en", 0.5}};
  EXPECT_EQ(LanguageGateScores(unsure_french).reason(), RejectReason::kLanguageScore);
  EXPECT_TRUE(LanguageGateScores(confident_french, "fr").kept());
}

TEST(LanguageGateTest, DocumentGateUsesClassifier) {
  Document d;
  d.content = testing::CleanEnglishText();
  EXPECT_TRUE(LanguageGate(d, Model()).kept());
  EXPECT_EQ(LanguageGate(d, Model(), "de").reason(), RejectReason::kLanguageMismatch);
}

TEST(ParseLanguageScoresTest, RanksAndSkipsJunk) {
  const auto scores = ParseLanguageScores("fr\t0.2\nen\t0.7\n\nde\t0.1\n");
  ASSERT_EQ(scores.size(), 3u);
  EXPECT_EQ(scores[0].language, "en");
  EXPECT_DOUBLE_EQ(scores[0].score, 0.7);
  // Lines that do not parse are skipped.
  EXPECT_TRUE(ParseLanguageScores("en 0.7\nen\tabc\n").empty());
}

TEST(ExternalClassifierTest, ReadsCommandOutput) {
  const ExternalLanguageClassifier ext("printf 'de\\t0.9\\nen\\t0.1\\n'");
  const auto scores = ext.Classify("irrelevant");
  ASSERT_EQ(scores.size(), 2u);
  EXPECT_EQ(scores[0].language, "de");
}

}  // namespace
}  // namespace refinery
