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

#include <random>

#include "refinery/error.hpp"
#include "refinery/text_extract.hpp"
#include "testing.hpp"

namespace refinery {
namespace {

TEST(BaselineExtractorTest, KeepsArticleDropsChrome) {
  const std::string text = testing::CleanEnglishText();
  const ExtractionResult r = ExtractMainContent(testing::HtmlPage("Kitchen gardens", text));
  EXPECT_FALSE(r.discarded);
  EXPECT_EQ(r.extractor_id, "baseline");
  EXPECT_NE(r.text.find("Soil health matters"), std::string::npos);
  for (const char* chrome : {"Site Header", "Welcome visitor", "About", "Popular posts", "Copyright", "analytics"}) {
    EXPECT_EQ(r.text.find(chrome), std::string::npos) << chrome;
  }
}

TEST(BaselineExtractorTest, PrefersDenseTextOverLinkLists) {
  const std::string html =
      "<html><body><div><a href=/a>one link</a> <a href=/b>two link</a> <a href=/c>three link</a></div>"
      "<div><p>A real paragraph with enough words to beat the menu of links.</p>"
      "<p>And a second one that follows it.</p></div></body></html>";
  const std::string raw = BaselineExtractor().ExtractRaw(html);
  EXPECT_EQ(raw.find("one link"), std::string::npos);
  EXPECT_NE(raw.find("A real paragraph"), std::string::npos);
  EXPECT_NE(raw.find("\nAnd a second"), std::string::npos);
}

TEST(BaselineExtractorTest, DecodesEntitiesAndSkipsComments) {
  const std::string raw =
      BaselineExtractor().ExtractRaw("<body><p>Fish &amp; chips &lt;3 &#233;t&eacute;<!-- hidden --></p></body>");
  EXPECT_EQ(raw, "Fish & chips <3 été");
}

TEST(BaselineExtractorTest, EmptyPageIsDiscarded) {
  for (const char* html : {"", "<html></html>", "<body><script>var x=1;</script><nav>menu</nav></body>",
                           "<body><p>   </p></body>"}) {
    const ExtractionResult r = ExtractMainContent(html);
    EXPECT_TRUE(r.discarded) << html;
    EXPECT_TRUE(r.text.empty()) << html;
  }
}

TEST(BaselineExtractorTest, SurvivesMalformedMarkup) {
  const ExtractionResult r = ExtractMainContent("<div><p>unclosed <b>bold <i>text</div></span><p>next");
  EXPECT_FALSE(r.discarded);
  EXPECT_NE(r.text.find("bold"), std::string::npos);
}

TEST(FormatTextTest, RemovesUrls) {
  EXPECT_EQ(FormatText("See https://example.com/page?x=1, then www.example.org."), "See , then .");
  EXPECT_EQ(FormatText("(http://a.b/c) done"), "() done");
  EXPECT_TRUE(ContainsUrl("visit www.example.com"));
  EXPECT_FALSE(ContainsUrl("email me at someone at example dot com"));
}

TEST(FormatTextTest, TrimsLinesAndCollapsesNewlines) {
  EXPECT_EQ(FormatText("a  \t\nb\n\n\n\n\nc\n\nd"), "a\nb\n\nc\n\nd");
}

TEST(FormatTextTest, IdempotentOnRandomInput) {
  std::mt19937_64 rng(11);
  const std::vector<std::string> pieces = {"word", " ", "\n", "\n\n\n", "\t", "http://x.y/z", "www.q.r", ".",
                                           ")", "é", "  \n", "https://", "www."};
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    const int n = std::uniform_int_distribution<int>(0, 30)(rng);
    for (int j = 0; j < n; ++j) s += pieces[std::uniform_int_distribution<std::size_t>(0, pieces.size() - 1)(rng)];
    const std::string once = FormatText(s);
    EXPECT_EQ(FormatText(once), once) << s;
    EXPECT_FALSE(ContainsUrl(once)) << s;
  }
}

TEST(MakeExtractorTest, ParsesSpec) {
  EXPECT_EQ(MakeExtractor("baseline")->id(), "baseline");
  EXPECT_EQ(MakeExtractor("external:cat")->id(), "external:cat");
  EXPECT_THROW(MakeExtractor("trafilatura"), Error);
}

TEST(ExternalExtractorTest, PipesThroughCommand) {
  const auto ex = MakeExtractor("external:tr a-z A-Z");
  const ExtractionResult r = ExtractAndFormat(*ex, "hello   \n\n\n\nworld");
  EXPECT_EQ(r.text, "HELLO\n\nWORLD");
}

}  // namespace
}  // namespace refinery
