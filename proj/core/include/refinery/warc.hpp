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
#include <filesystem>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace refinery {

struct WarcRecord {
  std::string record_type;
  std::optional<std::string> target_uri;
  // Filled for response records whose block is an HTTP response.
  std::optional<int> http_status;
  std::optional<std::string> content_type;
  // The record block, exactly Content-Length bytes.
  std::string payload;
  // WARC header fields, keys lowercased.
  std::map<std::string, std::string> headers;
  // Offset of the "WARC/" version line in the decompressed stream.
  std::uint64_t offset = 0;
};

namespace detail {
class ByteStream;
}

// Sequential reader over a WARC/1.0 or WARC/1.1 stream. Gzip input (one member
// per record, or a single member) is detected from the magic bytes.
// Errors: BadMagic and TruncatedRecord carry the decompressed offset of the
// failing record, GzipError the compressed offset.
class WarcReader {
 public:
  explicit WarcReader(std::istream& source);
  ~WarcReader();
  WarcReader(const WarcReader&) = delete;
  WarcReader& operator=(const WarcReader&) = delete;

  std::optional<WarcRecord> Next();

 private:
  bool Fill();
  bool ReadLine(std::string& line);
  std::uint64_t offset() const noexcept { return consumed_ + pos_; }

  std::unique_ptr<detail::ByteStream> stream_;
  std::string buffer_;
  std::size_t pos_ = 0;
  std::uint64_t consumed_ = 0;
};

std::vector<WarcRecord> ReadAllWarc(std::istream& source);

struct HttpResponse {
  int status = 0;
  std::map<std::string, std::string> headers;  // keys lowercased
  std::string body;                             // transfer- and content-decoded
};

// Parses an HTTP/1.x response message. nullopt when the status line is absent.
std::optional<HttpResponse> ParseHttpResponse(std::string_view message);

// Charset declared in a Content-Type value, lowercased, if any.
std::optional<std::string> CharsetFromContentType(std::string_view content_type);
// Charset declared by a <meta> tag within the first bytes of an HTML body.
std::optional<std::string> CharsetFromMeta(std::string_view html);
// Decodes `bytes` to UTF-8 using `charset`; unknown charsets and invalid input
// fall back to UTF-8 with replacement characters.
std::string DecodeToUtf8(std::string_view bytes, std::optional<std::string> charset);

struct Candidate {
  std::string url;
  std::string html;
  int http_status = 0;
  std::string warc_record_id;
};

struct CandidateCounts {
  std::uint64_t records = 0;
  std::uint64_t kept = 0;
  std::uint64_t skipped_type = 0;
  std::uint64_t skipped_status = 0;
  std::uint64_t skipped_content_type = 0;
  std::uint64_t skipped_no_uri = 0;

  void Merge(const CandidateCounts& o);
};

struct CandidateOptions {
  bool require_2xx = true;
  bool require_html = true;
};

bool IsHtmlContentType(std::string_view content_type);

// Converts one record; nullopt (and the matching skip counter bumped) when the
// record is not an HTML response.
std::optional<Candidate> ToCandidate(const WarcRecord& record, CandidateCounts& counts,
                                     const CandidateOptions& options = {});

std::vector<Candidate> ToCandidates(const std::vector<WarcRecord>& records, CandidateCounts& counts,
                                    const CandidateOptions& options = {});

// Expands file paths, directories (every *.warc / *.warc.gz inside, sorted)
// and glob patterns into a sorted, de-duplicated file list.
std::vector<std::filesystem::path> ExpandWarcInputs(const std::vector<std::string>& inputs);

}  // namespace refinery
