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

#include "refinery/warc.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <glob.h>
#include <set>

#include "refinery/error.hpp"

namespace refinery {
namespace detail {

class ByteStream {
 public:
  virtual ~ByteStream() = default;
  // Appends up to `max` bytes to `out`; returns the number appended (0 at EOF).
  virtual std::size_t Read(std::string& out, std::size_t max) = 0;
};

namespace {

constexpr std::size_t kChunk = 1 << 16;

class PlainStream : public ByteStream {
 public:
  PlainStream(std::istream& in, std::string prefix) : in_(in), pending_(std::move(prefix)) {}

  std::size_t Read(std::string& out, std::size_t max) override {
    if (!pending_.empty()) {
      const std::size_t n = std::min(max, pending_.size());
      out.append(pending_, 0, n);
      pending_.erase(0, n);
      return n;
    }
    const std::size_t old = out.size();
    out.resize(old + max);
    in_.read(out.data() + old, static_cast<std::streamsize>(max));
    const auto got = static_cast<std::size_t>(in_.gcount());
    out.resize(old + got);
    return got;
  }

 private:
  std::istream& in_;
  std::string pending_;
};

// Multi-member gzip inflater.
class GzipStream : public ByteStream {
 public:
  GzipStream(std::istream& in, std::string prefix) : in_(in), input_(std::move(prefix)) {
    if (inflateInit2(&zs_, 15 + 16) != Z_OK) {
      throw PositionedError(ErrorCode::kGzipError, 0, "inflateInit2 failed");
    }
  }
  ~GzipStream() override { inflateEnd(&zs_); }

  std::size_t Read(std::string& out, std::size_t max) override {
    std::array<unsigned char, kChunk> buf{};
    while (true) {
      if (input_pos_ == input_.size()) {
        if (!RefillInput()) {
          if (in_member_) {
            throw PositionedError(ErrorCode::kGzipError, compressed_offset_, "unexpected end of gzip member");
          }
          return 0;
        }
      }
      zs_.next_in = reinterpret_cast<Bytef*>(input_.data() + input_pos_);
      zs_.avail_in = static_cast<uInt>(input_.size() - input_pos_);
      zs_.next_out = buf.data();
      zs_.avail_out = static_cast<uInt>(std::min(max, buf.size()));
      const uInt before_in = zs_.avail_in;
      const uInt before_out = zs_.avail_out;
      in_member_ = true;
      const int rc = inflate(&zs_, Z_NO_FLUSH);
      const std::size_t used = before_in - zs_.avail_in;
      input_pos_ += used;
      compressed_offset_ += used;
      const std::size_t produced = before_out - zs_.avail_out;
      if (rc == Z_STREAM_END) {
        in_member_ = false;
        inflateReset(&zs_);
      } else if (rc != Z_OK && rc != Z_BUF_ERROR) {
        throw PositionedError(ErrorCode::kGzipError, compressed_offset_,
                              zs_.msg != nullptr ? zs_.msg : "inflate failed");
      }
      if (produced > 0) {
        out.append(reinterpret_cast<const char*>(buf.data()), produced);
        return produced;
      }
      if (rc == Z_BUF_ERROR && used == 0 && input_pos_ < input_.size()) {
        throw PositionedError(ErrorCode::kGzipError, compressed_offset_, "inflate made no progress");
      }
    }
  }

 private:
  bool RefillInput() {
    input_.resize(kChunk);
    in_.read(input_.data(), static_cast<std::streamsize>(kChunk));
    input_.resize(static_cast<std::size_t>(in_.gcount()));
    input_pos_ = 0;
    return !input_.empty();
  }

  std::istream& in_;
  std::string input_;
  std::size_t input_pos_ = 0;
  std::uint64_t compressed_offset_ = 0;
  bool in_member_ = false;
  z_stream zs_{};
};

}  // namespace
}  // namespace detail

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

WarcReader::WarcReader(std::istream& source) {
  std::string prefix(2, '\0');
  source.read(prefix.data(), 2);
  prefix.resize(static_cast<std::size_t>(source.gcount()));
  const bool gzip = prefix.size() == 2 && static_cast<unsigned char>(prefix[0]) == 0x1f &&
                    static_cast<unsigned char>(prefix[1]) == 0x8b;
  if (gzip) {
    stream_ = std::make_unique<detail::GzipStream>(source, std::move(prefix));
  } else {
    stream_ = std::make_unique<detail::PlainStream>(source, std::move(prefix));
  }
}

WarcReader::~WarcReader() = default;

bool WarcReader::Fill() {
  if (pos_ > 0 && pos_ >= buffer_.size() / 2) {
    buffer_.erase(0, pos_);
    consumed_ += pos_;
    pos_ = 0;
  }
  return stream_->Read(buffer_, detail::kChunk) > 0;
}

bool WarcReader::ReadLine(std::string& line) {
  while (true) {
    const std::size_t nl = buffer_.find('\n', pos_);
    if (nl != std::string::npos) {
      std::size_t end = nl;
      if (end > pos_ && buffer_[end - 1] == '\r') --end;
      line.assign(buffer_, pos_, end - pos_);
      pos_ = nl + 1;
      return true;
    }
    if (!Fill()) {
      if (pos_ < buffer_.size()) {
        line.assign(buffer_, pos_, std::string::npos);
        pos_ = buffer_.size();
        return true;
      }
      return false;
    }
  }
}

std::optional<WarcRecord> WarcReader::Next() {
  std::string line;
  // Skip blank separator lines between records.
  std::uint64_t start = 0;
  while (true) {
    start = offset();
    if (!ReadLine(line)) return std::nullopt;
    if (!Trim(line).empty()) break;
  }
  if (!line.starts_with("WARC/")) {
    throw PositionedError(ErrorCode::kBadMagic, start, "expected WARC version line");
  }

  WarcRecord record;
  record.offset = start;
  std::string last_key;
  bool header_done = false;
  while (ReadLine(line)) {
    if (line.empty()) {
      header_done = true;
      break;
    }
    if ((line.front() == ' ' || line.front() == '\t') && !last_key.empty()) {
      record.headers[last_key] += " " + std::string(Trim(line));
      continue;
    }
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos) {
      throw PositionedError(ErrorCode::kBadMagic, start, "malformed header line '" + line + "'");
    }
    last_key = Lower(Trim(std::string_view(line).substr(0, colon)));
    record.headers[last_key] = std::string(Trim(std::string_view(line).substr(colon + 1)));
  }
  if (!header_done) {
    throw PositionedError(ErrorCode::kTruncatedRecord, start, "stream ended inside record header");
  }

  auto length_it = record.headers.find("content-length");
  if (length_it == record.headers.end()) {
    throw PositionedError(ErrorCode::kBadMagic, start, "missing Content-Length");
  }
  std::uint64_t length = 0;
  const std::string& len_text = length_it->second;
  auto [ptr, ec] = std::from_chars(len_text.data(), len_text.data() + len_text.size(), length);
  if (ec != std::errc() || ptr != len_text.data() + len_text.size()) {
    throw PositionedError(ErrorCode::kBadMagic, start, "invalid Content-Length '" + len_text + "'");
  }

  while (buffer_.size() - pos_ < length) {
    if (!Fill()) {
      throw PositionedError(ErrorCode::kTruncatedRecord, start,
                            "payload has " + std::to_string(buffer_.size() - pos_) + " of " +
                                std::to_string(length) + " bytes");
    }
  }
  record.payload.assign(buffer_, pos_, static_cast<std::size_t>(length));
  pos_ += static_cast<std::size_t>(length);

  if (auto it = record.headers.find("warc-type"); it != record.headers.end()) {
    record.record_type = Lower(it->second);
  }
  if (auto it = record.headers.find("warc-target-uri"); it != record.headers.end()) {
    std::string_view uri = it->second;
    // WARC/1.0 writers sometimes wrap the URI in angle brackets.
    if (uri.size() >= 2 && uri.front() == '<' && uri.back() == '>') uri = uri.substr(1, uri.size() - 2);
    record.target_uri = std::string(uri);
  }
  if (record.record_type == "response" && record.payload.starts_with("HTTP/")) {
    // Only the head is needed here; ToCandidate decodes the body.
    const std::size_t head_end = record.payload.find("\r\n\r\n");
    const std::string_view head = std::string_view(record.payload).substr(0, head_end);
    if (auto http = ParseHttpResponse(std::string(head) + "\r\n\r\n")) {
      record.http_status = http->status;
      if (auto ct = http->headers.find("content-type"); ct != http->headers.end()) {
        record.content_type = ct->second;
      }
    }
  } else if (auto it = record.headers.find("content-type"); it != record.headers.end()) {
    record.content_type = it->second;
  }
  return record;
}

std::vector<WarcRecord> ReadAllWarc(std::istream& source) {
  WarcReader reader(source);
  std::vector<WarcRecord> out;
  while (auto rec = reader.Next()) out.push_back(std::move(*rec));
  return out;
}

void CandidateCounts::Merge(const CandidateCounts& o) {
  records += o.records;
  kept += o.kept;
  skipped_type += o.skipped_type;
  skipped_status += o.skipped_status;
  skipped_content_type += o.skipped_content_type;
  skipped_no_uri += o.skipped_no_uri;
}

std::vector<std::filesystem::path> ExpandWarcInputs(const std::vector<std::string>& inputs) {
  namespace fs = std::filesystem;
  std::set<fs::path> files;
  auto is_warc = [](const fs::path& p) {
    const std::string name = p.filename().string();
    return name.ends_with(".warc") || name.ends_with(".warc.gz");
  };
  for (const std::string& input : inputs) {
    const fs::path path(input);
    std::error_code ec;
    if (fs::is_directory(path, ec)) {
      for (const auto& entry : fs::directory_iterator(path)) {
        if (entry.is_regular_file() && is_warc(entry.path())) files.insert(entry.path());
      }
    } else if (fs::exists(path, ec)) {
      files.insert(path);
    } else {
      glob_t g{};
      if (::glob(input.c_str(), 0, nullptr, &g) == 0) {
        for (std::size_t i = 0; i < g.gl_pathc; ++i) files.insert(fs::path(g.gl_pathv[i]));
      }
      globfree(&g);
    }
  }
  return {files.begin(), files.end()};
}

}  // namespace refinery
