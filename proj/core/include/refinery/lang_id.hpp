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

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "refinery/document.hpp"

namespace refinery {

struct LanguageScore {
  std::string language;
  double score = 0.0;
};

class LanguageClassifier {
 public:
  virtual ~LanguageClassifier() = default;
  // Ranked scores, best first. Throws EmptyText on "".
  virtual std::vector<LanguageScore> Classify(std::string_view text) const = 0;
};

struct LabeledSample {
  std::string language;
  std::string text;
};

// Character-trigram multinomial model. Text is lowercased, non-letters fold to
// a single space and every trigram of the padded string is scored with add-one
// smoothing. Scores are a softmax over the per-trigram mean log-likelihood,
// scaled by `sharpness`; text without letters scores uniformly.
class TrigramClassifier final : public LanguageClassifier {
 public:
  static constexpr double kDefaultSharpness = 6.0;

  explicit TrigramClassifier(std::span<const LabeledSample> training, double sharpness = kDefaultSharpness);

  // Trained on the bundled en/fr/de/es sample corpus.
  static const TrigramClassifier& Builtin();

  std::vector<LanguageScore> Classify(std::string_view text) const override;
  const std::vector<std::string>& languages() const noexcept { return languages_; }

 private:
  std::vector<std::string> languages_;
  // Packed trigram -> row in log_probs_ (one column per language).
  std::unordered_map<std::uint64_t, std::uint32_t> vocabulary_;
  std::vector<double> log_probs_;
  std::vector<double> unseen_log_prob_;
  double sharpness_;
};

// Runs `command` once per text through a shell pipe; the command reads the
// text on stdin and prints "lang<TAB>score" lines, best first.
class ExternalLanguageClassifier final : public LanguageClassifier {
 public:
  explicit ExternalLanguageClassifier(std::string command) : command_(std::move(command)) {}
  std::vector<LanguageScore> Classify(std::string_view text) const override;

 private:
  std::string command_;
};

// Parses "lang<TAB>score" lines into a ranked list.
std::vector<LanguageScore> ParseLanguageScores(std::string_view output);

// Score first (LanguageScore when top score < threshold), then language
// (LanguageMismatch). The threshold is inclusive.
Verdict LanguageGateScores(std::span<const LanguageScore> scores, std::string_view target = "en",
                           double threshold = 0.65);
Verdict LanguageGate(const Document& doc, const LanguageClassifier& classifier, std::string_view target = "en",
                     double threshold = 0.65);

// Bundled corpus used by the built-in classifier and its held-out check.
std::span<const LabeledSample> BundledTrainingSamples();
std::span<const LabeledSample> BundledHeldOutSamples();

}  // namespace refinery
