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

#include "refinery/lang_id.hpp"

#include <unistd.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "refinery/error.hpp"
#include "refinery/unicode.hpp"

namespace refinery {
namespace {

// Lowercased letters with every run of non-letters folded to one space, padded
// with a space on both ends. Empty when the text has no letters.
std::u32string LetterStream(std::string_view text) {
  std::u32string out;
  out.reserve(text.size() + 2);
  out.push_back(U' ');
  bool has_letter = false;
  for (std::size_t pos = 0; pos < text.size();) {
    const char32_t cp = unicode::DecodeNext(text, pos);
    if (unicode::IsAlphabetic(cp)) {
      out.push_back(unicode::ToLower(cp));
      has_letter = true;
    } else if (out.back() != U' ') {
      out.push_back(U' ');
    }
  }
  if (!has_letter) return {};
  if (out.back() != U' ') out.push_back(U' ');
  return out;
}

template <typename Fn>
void ForEachTrigram(const std::u32string& stream, Fn&& fn) {
  for (std::size_t i = 0; i + 3 <= stream.size(); ++i) {
    fn((static_cast<std::uint64_t>(stream[i]) << 42) | (static_cast<std::uint64_t>(stream[i + 1]) << 21) |
       static_cast<std::uint64_t>(stream[i + 2]));
  }
}

}  // namespace

TrigramClassifier::TrigramClassifier(std::span<const LabeledSample> training, double sharpness)
    : sharpness_(sharpness) {
  std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> counts;
  std::vector<std::uint64_t> totals;
  for (const LabeledSample& sample : training) {
    auto it = std::find(languages_.begin(), languages_.end(), sample.language);
    std::size_t idx = static_cast<std::size_t>(it - languages_.begin());
    if (it == languages_.end()) {
      languages_.push_back(sample.language);
      counts.emplace_back();
      totals.push_back(0);
    }
    ForEachTrigram(LetterStream(sample.text), [&](std::uint64_t tri) {
      ++counts[idx][tri];
      ++totals[idx];
      vocabulary_.emplace(tri, static_cast<std::uint32_t>(vocabulary_.size()));
    });
  }
  const std::size_t n_lang = languages_.size();
  const double v = static_cast<double>(vocabulary_.size()) + 1.0;
  unseen_log_prob_.resize(n_lang);
  log_probs_.assign(vocabulary_.size() * n_lang, 0.0);
  for (std::size_t l = 0; l < n_lang; ++l) {
    const double denom = static_cast<double>(totals[l]) + v;
    unseen_log_prob_[l] = std::log(1.0 / denom);
    for (const auto& [tri, row] : vocabulary_) {
      auto it = counts[l].find(tri);
      const double c = it == counts[l].end() ? 0.0 : static_cast<double>(it->second);
      log_probs_[row * n_lang + l] = std::log((c + 1.0) / denom);
    }
  }
}

const TrigramClassifier& TrigramClassifier::Builtin() {
  static const TrigramClassifier kBuiltin(BundledTrainingSamples());
  return kBuiltin;
}

std::vector<LanguageScore> TrigramClassifier::Classify(std::string_view text) const {
  if (text.empty()) throw Error(ErrorCode::kEmptyText, "cannot classify empty text");
  const std::u32string stream = LetterStream(text);
  const std::size_t n_lang = languages_.size();
  std::vector<double> mean_ll(n_lang, 0.0);
  std::size_t n_tri = 0;
  ForEachTrigram(stream, [&](std::uint64_t tri) {
    ++n_tri;
    auto it = vocabulary_.find(tri);
    for (std::size_t l = 0; l < n_lang; ++l) {
      mean_ll[l] += it == vocabulary_.end() ? unseen_log_prob_[l] : log_probs_[it->second * n_lang + l];
    }
  });

  std::vector<LanguageScore> scores(n_lang);
  if (n_tri == 0) {
    for (std::size_t l = 0; l < n_lang; ++l) scores[l] = {languages_[l], 1.0 / static_cast<double>(n_lang)};
    return scores;
  }
  double max_logit = -INFINITY;
  for (double& m : mean_ll) {
    m = sharpness_ * m / static_cast<double>(n_tri);
    max_logit = std::max(max_logit, m);
  }
  double z = 0.0;
  for (double m : mean_ll) z += std::exp(m - max_logit);
  for (std::size_t l = 0; l < n_lang; ++l) {
    scores[l] = {languages_[l], std::exp(mean_ll[l] - max_logit) / z};
  }
  std::stable_sort(scores.begin(), scores.end(),
                   [](const LanguageScore& a, const LanguageScore& b) { return a.score > b.score; });
  return scores;
}

std::vector<LanguageScore> ParseLanguageScores(std::string_view output) {
  std::vector<LanguageScore> scores;
  std::istringstream in{std::string(output)};
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) continue;
    LanguageScore s;
    s.language = line.substr(0, tab);
    try {
      s.score = std::stod(line.substr(tab + 1));
    } catch (const std::exception&) {
      continue;
    }
    scores.push_back(std::move(s));
  }
  std::stable_sort(scores.begin(), scores.end(),
                   [](const LanguageScore& a, const LanguageScore& b) { return a.score > b.score; });
  return scores;
}

std::vector<LanguageScore> ExternalLanguageClassifier::Classify(std::string_view text) const {
  if (text.empty()) throw Error(ErrorCode::kEmptyText, "cannot classify empty text");
  char path_template[] = "/tmp/refinery-lid-XXXXXX";
  const int fd = ::mkstemp(path_template);
  if (fd < 0) throw Error(ErrorCode::kIoError, "mkstemp failed");
  ::close(fd);
  {
    std::ofstream out(path_template, std::ios::binary);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
  }
  const std::string cmd = command_ + " < '" + std::string(path_template) + "'";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  std::string output;
  if (pipe != nullptr) {
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), n);
    ::pclose(pipe);
  }
  std::filesystem::remove(path_template);
  auto scores = ParseLanguageScores(output);
  if (scores.empty()) throw Error(ErrorCode::kIoError, "language classifier '" + command_ + "' returned nothing");
  return scores;
}

Verdict LanguageGateScores(std::span<const LanguageScore> scores, std::string_view target, double threshold) {
  if (scores.empty() || scores.front().score < threshold) return Verdict::Reject(RejectReason::kLanguageScore);
  if (scores.front().language != target) return Verdict::Reject(RejectReason::kLanguageMismatch);
  return Verdict::Keep();
}

Verdict LanguageGate(const Document& doc, const LanguageClassifier& classifier, std::string_view target,
                     double threshold) {
  if (doc.content.empty()) return Verdict::Reject(RejectReason::kLanguageScore);
  const auto scores = classifier.Classify(doc.content);
  return LanguageGateScores(scores, target, threshold);
}

}  // namespace refinery
