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

#include <sstream>

#include "refinery/error.hpp"
#include "refinery/warc.hpp"
#include "testing.hpp"

namespace refinery {
namespace {

using testing::Gzip;
using testing::RawWarcRecord;
using testing::WarcResponse;

std::string ThreeRecords() {
  return RawWarcRecord("warcinfo", "", "software: test\r\n") +
         WarcResponse("https://example.com/a", "<html><body><p>Alpha</p></body></html>") +
         WarcResponse("https://example.com/b", "{\"x\":1}", 200, "application/json");
}

std::vector<WarcRecord> ReadAll(const std::string& bytes) {
  std::istringstream in(bytes);
  return ReadAllWarc(in);
}

template <typename Fn>
PositionedError Catch(Fn&& fn) {
  try {
    fn();
  } catch (const PositionedError& e) {
    return e;
  }
  ADD_FAILURE() << "expected a PositionedError";
  return PositionedError(ErrorCode::kIoError, 0, "none");
}

TEST(WarcReaderTest, ReadsPlainRecords) {
  const auto records = ReadAll(ThreeRecords());
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0].record_type, "warcinfo");
  EXPECT_FALSE(records[0].target_uri.has_value());
  EXPECT_EQ(records[1].record_type, "response");
  EXPECT_EQ(records[1].target_uri, "https://example.com/a");
  EXPECT_EQ(records[1].http_status, 200);
  EXPECT_EQ(records[1].content_type, "text/html; charset=utf-8");
  EXPECT_EQ(records[0].offset, 0u);
  EXPECT_GT(records[1].offset, 0u);
  EXPECT_EQ(records[1].headers.at("warc-type"), "response");
}

TEST(WarcReaderTest, OffsetsPointAtVersionLines) {
  const std::string bytes = ThreeRecords();
  for (const WarcRecord& r : ReadAll(bytes)) EXPECT_EQ(bytes.compare(r.offset, 5, "WARC/"), 0);
}

TEST(WarcReaderTest, GzipPerRecordAndSingleMemberMatchPlain) {
  const std::string a = RawWarcRecord("warcinfo", "", "software: test\r\n");
  const std::string b = WarcResponse("https://example.com/a", "<p>Alpha</p>");
  const auto plain = ReadAll(a + b);
  const auto per_record = ReadAll(Gzip(a) + Gzip(b));
  const auto single = ReadAll(Gzip(a + b));
  ASSERT_EQ(per_record.size(), plain.size());
  ASSERT_EQ(single.size(), plain.size());
  for (std::size_t i = 0; i < plain.size(); ++i) {
    EXPECT_EQ(per_record[i].payload, plain[i].payload);
    EXPECT_EQ(single[i].payload, plain[i].payload);
    EXPECT_EQ(single[i].offset, plain[i].offset);
  }
}

TEST(WarcReaderTest, WarcVersionOneOneAccepted) {
  std::string rec = RawWarcRecord("resource", "file:///x", "hello");
  rec.replace(0, 8, "WARC/1.1");
  const auto records = ReadAll(rec);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].payload, "hello");
}

TEST(WarcReaderTest, BadMagicCarriesOffset) {
  const std::string good = RawWarcRecord("warcinfo", "", "x");
  const std::string bytes = good + "NOTWARC/1.0\r\nContent-Length: 0\r\n\r\n";
  std::istringstream in(bytes);
  WarcReader reader(in);
  ASSERT_TRUE(reader.Next().has_value());
  const PositionedError e = Catch([&] { reader.Next(); });
  EXPECT_EQ(e.code(), ErrorCode::kBadMagic);
  EXPECT_EQ(e.position(), good.size());
}

TEST(WarcReaderTest, MissingContentLengthIsBadMagic) {
  const PositionedError e = Catch([] { ReadAll("WARC/1.0\r\nWARC-Type: warcinfo\r\n\r\nbody"); });
  EXPECT_EQ(e.code(), ErrorCode::kBadMagic);
}

TEST(WarcReaderTest, ShortBlockIsTruncatedRecord) {
  const std::string good = RawWarcRecord("warcinfo", "", "x");
  std::string bad = WarcResponse("https://example.com/", "<p>body</p>");
  bad.resize(bad.size() - 20);
  const PositionedError e = Catch([&] { ReadAll(good + bad); });
  EXPECT_EQ(e.code(), ErrorCode::kTruncatedRecord);
  EXPECT_EQ(e.position(), good.size());
}

TEST(WarcReaderTest, CorruptGzipIsGzipError) {
  std::string gz = Gzip(RawWarcRecord("warcinfo", "", std::string(2000, 'a')));
  for (std::size_t i = 12; i < gz.size() - 8; ++i) gz[i] = static_cast<char>(gz[i] ^ 0x5a);
  const PositionedError e = Catch([&] { ReadAll(gz); });
  EXPECT_EQ(e.code(), ErrorCode::kGzipError);
}

TEST(HttpTest, ParsesStatusHeadersAndBody) {
  const auto resp = ParseHttpResponse("HTTP/1.1 404 Not Found\r\nContent-Type: text/html\r\nX-A: b\r\n\r\nmissing");
  ASSERT_TRUE(resp.has_value());
  EXPECT_EQ(resp->status, 404);
  EXPECT_EQ(resp->headers.at("content-type"), "text/html");
  EXPECT_EQ(resp->body, "missing");
  EXPECT_FALSE(ParseHttpResponse("garbage").has_value());
}

TEST(HttpTest, DecodesChunkedAndGzipBodies) {
  const auto chunked =
      ParseHttpResponse("HTTP/1.1 200 OK\r\nTransfer-Encoding: chunked\r\n\r\n5\r\nHello\r\n6\r\n world\r\n0\r\n\r\n");
  ASSERT_TRUE(chunked.has_value());
  EXPECT_EQ(chunked->body, "Hello world");

  const std::string gz = Gzip("<p>compressed</p>");
  const auto encoded = ParseHttpResponse("HTTP/1.1 200 OK\r\nContent-Encoding: gzip\r\n\r\n" + gz);
  ASSERT_TRUE(encoded.has_value());
  EXPECT_EQ(encoded->body, "<p>compressed</p>");
}

TEST(HttpTest, CharsetDetectionAndDecoding) {
  EXPECT_EQ(CharsetFromContentType("text/html; charset=ISO-8859-1"), "iso-8859-1");
  EXPECT_FALSE(CharsetFromContentType("text/html").has_value());
  EXPECT_EQ(CharsetFromMeta("<html><head><meta charset=\"windows-1252\"></head>"), "windows-1252");
  EXPECT_EQ(CharsetFromMeta("<meta http-equiv=\"Content-Type\" content=\"text/html; charset=Shift_JIS\">"),
            "shift_jis");
  EXPECT_EQ(DecodeToUtf8("caf\xe9", std::string("iso-8859-1")), "café");
  EXPECT_EQ(DecodeToUtf8("caf\xc3\xa9", std::nullopt), "café");
  EXPECT_EQ(DecodeToUtf8("bad \xff byte", std::nullopt), "bad \xef\xbf\xbd byte");
}

TEST(CandidateTest, KeepsHtmlResponsesAndCountsSkips) {
  const std::string bytes =
      RawWarcRecord("request", "https://example.com/a", "GET / HTTP/1.1\r\n\r\n") +
      WarcResponse("https://example.com/a", "<p>ok</p>") +
      WarcResponse("https://example.com/b", "<p>gone</p>", 404) +
      WarcResponse("https://example.com/c.png", "PNG", 200, "image/png") +
      WarcResponse("https://example.com/d", "<p>xhtml</p>", 200, "application/xhtml+xml") +
      RawWarcRecord("response", "", "HTTP/1.1 200 OK\r\nContent-Type: text/html\r\n\r\n<p>x</p>");
  CandidateCounts counts;
  const auto candidates = ToCandidates(ReadAll(bytes), counts);
  ASSERT_EQ(candidates.size(), 2u);
  EXPECT_EQ(candidates[0].url, "https://example.com/a");
  EXPECT_EQ(candidates[0].html, "<p>ok</p>");
  EXPECT_EQ(candidates[1].url, "https://example.com/d");
  EXPECT_EQ(counts.records, 6u);
  EXPECT_EQ(counts.kept, 2u);
  EXPECT_EQ(counts.skipped_type, 1u);
  EXPECT_EQ(counts.skipped_status, 1u);
  EXPECT_EQ(counts.skipped_content_type, 1u);
  EXPECT_EQ(counts.skipped_no_uri, 1u);
}

TEST(CandidateTest, OptionsRelaxFilters) {
  CandidateCounts counts;
  CandidateOptions options;
  options.require_2xx = false;
  options.require_html = false;
  const auto records = ReadAll(WarcResponse("https://e.com/x", "gone", 404, "text/plain"));
  EXPECT_EQ(ToCandidates(records, counts, options).size(), 1u);
}

TEST(CandidateTest, DecodesDeclaredCharset) {
  CandidateCounts counts;
  const auto records = ReadAll(WarcResponse("https://e.com/", "<p>na\xefve</p>", 200, "text/html; charset=latin1"));
  const auto c = ToCandidates(records, counts);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].html, "<p>naïve</p>");
}

TEST(ExpandInputsTest, DirectoriesAndGlobs) {
  testing::TempDir dir;
  testing::WriteFile(dir / "b.warc", "");
  testing::WriteFile(dir / "a.warc.gz", "");
  testing::WriteFile(dir / "notes.txt", "");
  testing::WriteFile(dir / "sub" / "c.warc", "");
  const auto from_dir = ExpandWarcInputs({dir.path().string()});
  ASSERT_EQ(from_dir.size(), 2u);
  EXPECT_EQ(from_dir[0].filename(), "a.warc.gz");
  EXPECT_EQ(from_dir[1].filename(), "b.warc");
  const auto from_glob = ExpandWarcInputs({(dir / "*.warc").string(), (dir / "b.warc").string()});
  ASSERT_EQ(from_glob.size(), 1u);
  EXPECT_TRUE(ExpandWarcInputs({(dir / "nothing-*.warc").string()}).empty());
}

}  // namespace
}  // namespace refinery
