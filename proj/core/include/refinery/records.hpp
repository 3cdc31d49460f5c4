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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "refinery/document.hpp"

namespace refinery {

// Line-delimited record files: one JSON object per line, "\n" terminated,
// UTF-8. Keys are written in a fixed order:
//   {"id", "url", "dump_id", "part_id", "content", "token_count"?, "annotations"}
// `id`, `url` and `content` are required when reading.

std::string EncodeRecord(const Document& doc);
// Throws MalformedRecord (position = line_number) on a bad line.
Document DecodeRecord(const std::string& line, std::uint64_t line_number);

// Writes one line per document; throws SinkError if the stream fails.
std::size_t WriteRecords(std::span<const Document> docs, std::ostream& sink);

// Strict reader: throws MalformedRecord on the first bad line and Truncated if
// the last record lacks its newline terminator.
std::vector<Document> ReadRecords(std::istream& source);

struct MalformedLine {
  std::uint64_t line_number = 0;
  std::string message;
};

// Streaming reader that reports malformed lines instead of stopping.
class RecordReader {
 public:
  explicit RecordReader(std::istream& source) : source_(source) {}

  // Next well-formed document, or nullopt at end of input. Bad lines are
  // appended to errors() and skipped over.
  std::optional<Document> Next();

  const std::vector<MalformedLine>& errors() const noexcept { return errors_; }
  std::uint64_t lines_read() const noexcept { return line_number_; }

 private:
  std::istream& source_;
  std::uint64_t line_number_ = 0;
  std::vector<MalformedLine> errors_;
};

}  // namespace refinery
