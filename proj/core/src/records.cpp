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

#include "refinery/records.hpp"

#include <istream>
#include <ostream>

#include "json.hpp"
#include "refinery/error.hpp"

namespace refinery {
namespace {

using ordered_json = nlohmann::ordered_json;

const std::string& RequireString(const nlohmann::json& obj, const char* key, std::uint64_t line_number) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw PositionedError(ErrorCode::kMalformedRecord, line_number,
                          std::string("missing or non-string field '") + key + "'");
  }
  return it->get_ref<const std::string&>();
}

bool ReadLine(std::istream& in, std::string& line, bool& terminated) {
  line.clear();
  if (!std::getline(in, line)) return false;
  terminated = !in.eof();
  return true;
}

}  // namespace

std::string EncodeRecord(const Document& doc) {
  ordered_json j;
  j["id"] = doc.id;
  j["url"] = doc.url;
  j["dump_id"] = doc.dump_id;
  j["part_id"] = doc.part_id;
  j["content"] = doc.content;
  if (doc.token_count) j["token_count"] = *doc.token_count;
  ordered_json ann = ordered_json::object();
  for (const auto& [stage, summary] : doc.annotations) ann[stage] = summary;
  j["annotations"] = std::move(ann);
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

Document DecodeRecord(const std::string& line, std::uint64_t line_number) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw PositionedError(ErrorCode::kMalformedRecord, line_number, e.what());
  }
  if (!j.is_object()) {
    throw PositionedError(ErrorCode::kMalformedRecord, line_number, "record is not an object");
  }
  Document doc;
  doc.id = RequireString(j, "id", line_number);
  doc.url = RequireString(j, "url", line_number);
  doc.content = RequireString(j, "content", line_number);
  if (auto it = j.find("dump_id"); it != j.end()) {
    if (!it->is_string()) throw PositionedError(ErrorCode::kMalformedRecord, line_number, "dump_id");
    doc.dump_id = it->get<std::string>();
  }
  if (auto it = j.find("part_id"); it != j.end()) {
    if (!it->is_number_unsigned()) throw PositionedError(ErrorCode::kMalformedRecord, line_number, "part_id");
    doc.part_id = it->get<std::uint32_t>();
  }
  if (auto it = j.find("token_count"); it != j.end()) {
    if (!it->is_number_unsigned()) throw PositionedError(ErrorCode::kMalformedRecord, line_number, "token_count");
    doc.token_count = it->get<std::uint64_t>();
  }
  if (auto it = j.find("annotations"); it != j.end()) {
    if (!it->is_object()) throw PositionedError(ErrorCode::kMalformedRecord, line_number, "annotations");
    for (const auto& [stage, summary] : it->items()) {
      if (!summary.is_string()) {
        throw PositionedError(ErrorCode::kMalformedRecord, line_number, "annotation '" + stage + "'");
      }
      doc.annotations.emplace(stage, summary.get<std::string>());
    }
  }
  return doc;
}

std::size_t WriteRecords(std::span<const Document> docs, std::ostream& sink) {
  for (const Document& doc : docs) {
    sink << EncodeRecord(doc) << '\n';
  }
  sink.flush();
  if (!sink) throw Error(ErrorCode::kSinkError, "record sink write failed");
  return docs.size();
}

std::vector<Document> ReadRecords(std::istream& source) {
  std::vector<Document> docs;
  std::string line;
  bool terminated = true;
  std::uint64_t line_number = 0;
  while (ReadLine(source, line, terminated)) {
    ++line_number;
    if (!terminated) {
      if (line.empty()) break;
      throw PositionedError(ErrorCode::kTruncated, line_number, "last record has no newline terminator");
    }
    docs.push_back(DecodeRecord(line, line_number));
  }
  return docs;
}

std::optional<Document> RecordReader::Next() {
  std::string line;
  bool terminated = true;
  while (ReadLine(source_, line, terminated)) {
    ++line_number_;
    if (!terminated && line.empty()) break;
    try {
      if (!terminated) {
        throw PositionedError(ErrorCode::kTruncated, line_number_, "last record has no newline terminator");
      }
      return DecodeRecord(line, line_number_);
    } catch (const Error& e) {
      errors_.push_back({line_number_, e.what()});
    }
  }
  return std::nullopt;
}

}  // namespace refinery
