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

#include <unicode/ucnv.h>
#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <charconv>

#include "refinery/unicode.hpp"
#include "refinery/warc.hpp"

namespace refinery {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<std::string> Dechunk(std::string_view body) {
  std::string out;
  std::size_t pos = 0;
  while (pos < body.size()) {
    const std::size_t eol = body.find("\r\n", pos);
    if (eol == std::string_view::npos) return std::nullopt;
    std::string_view size_line = body.substr(pos, eol - pos);
    if (auto semi = size_line.find(';'); semi != std::string_view::npos) size_line = size_line.substr(0, semi);
    size_line = Trim(size_line);
    std::size_t size = 0;
    auto [ptr, ec] = std::from_chars(size_line.data(), size_line.data() + size_line.size(), size, 16);
    if (ec != std::errc() || ptr != size_line.data() + size_line.size()) return std::nullopt;
    pos = eol + 2;
    if (size == 0) return out;
    if (pos + size > body.size()) return std::nullopt;
    out.append(body.substr(pos, size));
    pos += size + 2;
  }
  return out;
}

std::optional<std::string> Inflate(std::string_view data, int window_bits) {
  z_stream zs{};
  if (inflateInit2(&zs, window_bits) != Z_OK) return std::nullopt;
  std::string out;
  std::array<char, 1 << 15> buf{};
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  int rc = Z_OK;
  while (rc == Z_OK) {
    zs.next_out = reinterpret_cast<Bytef*>(buf.data());
    zs.avail_out = static_cast<uInt>(buf.size());
    rc = inflate(&zs, Z_NO_FLUSH);
    out.append(buf.data(), buf.size() - zs.avail_out);
    if (rc == Z_BUF_ERROR && zs.avail_in == 0) break;
  }
  inflateEnd(&zs);
  if (rc != Z_STREAM_END && rc != Z_BUF_ERROR) return std::nullopt;
  return out;
}

std::string CleanCharset(std::string_view value) {
  value = Trim(value);
  if (!value.empty() && (value.front() == '"' || value.front() == '\'')) value.remove_prefix(1);
  std::size_t end = 0;
  while (end < value.size()) {
    const char c = value[end];
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.' || c == ':')) break;
    ++end;
  }
  return Lower(value.substr(0, end));
}

}  // namespace

std::optional<HttpResponse> ParseHttpResponse(std::string_view message) {
  if (!message.starts_with("HTTP/")) return std::nullopt;
  std::size_t head_end = message.find("\r\n\r\n");
  std::size_t sep = 4;
  if (head_end == std::string_view::npos) {
    head_end = message.find("\n\n");
    sep = 2;
  }
  const std::string_view head = head_end == std::string_view::npos ? message : message.substr(0, head_end);
  const std::string_view raw_body =
      head_end == std::string_view::npos ? std::string_view{} : message.substr(head_end + sep);

  HttpResponse resp;
  std::size_t pos = 0;
  bool first = true;
  while (pos <= head.size()) {
    std::size_t eol = head.find('\n', pos);
    if (eol == std::string_view::npos) eol = head.size();
    std::string_view line = head.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = eol + 1;
    if (first) {
      first = false;
      const std::size_t sp = line.find(' ');
      if (sp == std::string_view::npos) return std::nullopt;
      std::string_view code = Trim(line.substr(sp + 1)).substr(0, 3);
      auto [ptr, ec] = std::from_chars(code.data(), code.data() + code.size(), resp.status);
      if (ec != std::errc()) return std::nullopt;
      continue;
    }
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) continue;
    resp.headers[Lower(Trim(line.substr(0, colon)))] = std::string(Trim(line.substr(colon + 1)));
  }

  std::string body(raw_body);
  if (auto te = resp.headers.find("transfer-encoding");
      te != resp.headers.end() && Lower(te->second).find("chunked") != std::string::npos) {
    if (auto dechunked = Dechunk(body)) body = std::move(*dechunked);
  }
  if (auto ce = resp.headers.find("content-encoding"); ce != resp.headers.end()) {
    const std::string enc = Lower(ce->second);
    std::optional<std::string> decoded;
    if (enc == "gzip" || enc == "x-gzip") decoded = Inflate(body, 15 + 16);
    else if (enc == "deflate") decoded = Inflate(body, 15);
    if (decoded) body = std::move(*decoded);
  }
  resp.body = std::move(body);
  return resp;
}

std::optional<std::string> CharsetFromContentType(std::string_view content_type) {
  const std::string lower = Lower(content_type);
  const std::size_t at = lower.find("charset=");
  if (at == std::string::npos) return std::nullopt;
  std::string cs = CleanCharset(std::string_view(lower).substr(at + 8));
  if (cs.empty()) return std::nullopt;
  return cs;
}

std::optional<std::string> CharsetFromMeta(std::string_view html) {
  const std::string head = Lower(html.substr(0, std::min<std::size_t>(html.size(), 4096)));
  std::size_t pos = 0;
  while ((pos = head.find("<meta", pos)) != std::string::npos) {
    const std::size_t end = head.find('>', pos);
    const std::string_view tag = std::string_view(head).substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    pos += 5;
    if (auto at = tag.find("charset="); at != std::string_view::npos) {
      std::string cs = CleanCharset(tag.substr(at + 8));
      if (!cs.empty()) return cs;
    }
  }
  return std::nullopt;
}

std::string DecodeToUtf8(std::string_view bytes, std::optional<std::string> charset) {
  if (!charset || *charset == "utf-8" || *charset == "utf8" || *charset == "us-ascii" || *charset == "ascii") {
    return unicode::SanitizeUtf8(bytes);
  }
  UErrorCode status = U_ZERO_ERROR;
  UConverter* conv = ucnv_open(charset->c_str(), &status);
  if (U_FAILURE(status) || conv == nullptr) {
    return unicode::SanitizeUtf8(bytes);
  }
  std::u16string utf16(bytes.size() * 2 + 16, u'\0');
  status = U_ZERO_ERROR;
  const int32_t n16 = ucnv_toUChars(conv, reinterpret_cast<UChar*>(utf16.data()),
                                    static_cast<int32_t>(utf16.size()), bytes.data(),
                                    static_cast<int32_t>(bytes.size()), &status);
  ucnv_close(conv);
  if (U_FAILURE(status)) return unicode::SanitizeUtf8(bytes);
  std::string out;
  out.reserve(static_cast<std::size_t>(n16));
  for (int32_t i = 0; i < n16;) {
    char32_t cp = utf16[static_cast<std::size_t>(i)];
    if (cp >= 0xD800 && cp <= 0xDBFF && i + 1 < n16) {
      const char32_t lo = utf16[static_cast<std::size_t>(i) + 1];
      if (lo >= 0xDC00 && lo <= 0xDFFF) {
        cp = 0x10000 + ((cp - 0xD800) << 10) + (lo - 0xDC00);
        ++i;
      }
    }
    if (cp >= 0xD800 && cp <= 0xDFFF) cp = unicode::kReplacement;
    unicode::AppendUtf8(out, cp);
    ++i;
  }
  return out;
}

bool IsHtmlContentType(std::string_view content_type) {
  const std::string lower = Lower(content_type);
  return lower.find("text/html") != std::string::npos || lower.find("application/xhtml") != std::string::npos;
}

std::optional<Candidate> ToCandidate(const WarcRecord& record, CandidateCounts& counts,
                                     const CandidateOptions& options) {
  ++counts.records;
  if (record.record_type != "response") {
    ++counts.skipped_type;
    return std::nullopt;
  }
  auto http = ParseHttpResponse(record.payload);
  if (!http) {
    ++counts.skipped_type;
    return std::nullopt;
  }
  if (options.require_2xx && (http->status < 200 || http->status > 299)) {
    ++counts.skipped_status;
    return std::nullopt;
  }
  std::string content_type;
  if (auto it = http->headers.find("content-type"); it != http->headers.end()) content_type = it->second;
  if (options.require_html && !IsHtmlContentType(content_type)) {
    ++counts.skipped_content_type;
    return std::nullopt;
  }
  if (!record.target_uri || record.target_uri->empty()) {
    ++counts.skipped_no_uri;
    return std::nullopt;
  }
  std::optional<std::string> charset = CharsetFromContentType(content_type);
  if (!charset) charset = CharsetFromMeta(http->body);

  Candidate cand;
  cand.url = *record.target_uri;
  cand.html = DecodeToUtf8(http->body, charset);
  cand.http_status = http->status;
  if (auto it = record.headers.find("warc-record-id"); it != record.headers.end()) {
    cand.warc_record_id = it->second;
  }
  ++counts.kept;
  return cand;
}

std::vector<Candidate> ToCandidates(const std::vector<WarcRecord>& records, CandidateCounts& counts,
                                    const CandidateOptions& options) {
  std::vector<Candidate> out;
  for (const WarcRecord& r : records) {
    if (auto c = ToCandidate(r, counts, options)) out.push_back(std::move(*c));
  }
  return out;
}

}  // namespace refinery
