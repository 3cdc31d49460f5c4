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

#include <memory>
#include <string>
#include <string_view>

namespace refinery {

struct ExtractionResult {
  std::string text;
  std::string extractor_id;
  // True iff `text` is empty or whitespace-only after formatting.
  bool discarded = false;
};

class Extractor {
 public:
  virtual ~Extractor() = default;
  virtual std::string_view id() const = 0;
  // Raw main-content text; formatting is applied by ExtractAndFormat.
  virtual std::string ExtractRaw(std::string_view html) const = 0;
};

// Readability-style density extractor. Drops script/style/noscript/template,
// comments and page chrome (nav, header, footer, aside, form), scores each
// block element by text_length * (1 - link_text_fraction) and returns the
// text of the best-scoring subtree, deepest element winning ties. Blocks are
// separated by single newlines.
class BaselineExtractor final : public Extractor {
 public:
  std::string_view id() const override { return "baseline"; }
  std::string ExtractRaw(std::string_view html) const override;
};

// Pipes HTML into `command` through a shell and reads plain text back.
class ExternalExtractor final : public Extractor {
 public:
  explicit ExternalExtractor(std::string command);
  std::string_view id() const override { return id_; }
  std::string ExtractRaw(std::string_view html) const override;

 private:
  std::string command_;
  std::string id_;
};

// "baseline" or "external:<command>"; throws ConfigError otherwise.
std::unique_ptr<Extractor> MakeExtractor(std::string_view spec);

// Main content of `html` via the baseline extractor, formatted.
ExtractionResult ExtractMainContent(std::string_view html);
ExtractionResult ExtractAndFormat(const Extractor& extractor, std::string_view html);

// Removes URLs (http(s):// or www. up to whitespace, trailing .,;:!?)]}»"'
// kept), trims trailing whitespace on every line, and collapses runs of three
// or more newlines to two. Idempotent.
std::string FormatText(std::string_view text);

// True iff `text` contains something FormatText would remove as a URL.
bool ContainsUrl(std::string_view text);

}  // namespace refinery
