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

#include <unistd.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "refinery/error.hpp"
#include "refinery/text_extract.hpp"
#include "refinery/unicode.hpp"

namespace refinery {
namespace {

// Elements whose whole subtree never contributes text.
bool IsDropped(std::string_view tag) {
  static constexpr std::array<std::string_view, 16> kDropped = {
      "script", "style", "noscript", "template", "svg",    "iframe", "head",   "object",
      "nav",    "header", "footer",  "aside",    "form",   "button", "select", "canvas"};
  return std::find(kDropped.begin(), kDropped.end(), tag) != kDropped.end();
}

// Elements whose content is raw text up to the matching end tag.
bool IsRawText(std::string_view tag) {
  return tag == "script" || tag == "style" || tag == "textarea" || tag == "noscript" || tag == "template";
}

bool IsVoid(std::string_view tag) {
  static constexpr std::array<std::string_view, 15> kVoid = {
      "br", "hr", "img", "input", "meta", "link", "area", "base", "col", "embed", "param", "source", "track", "wbr",
      "keygen"};
  return std::find(kVoid.begin(), kVoid.end(), tag) != kVoid.end();
}

bool IsBlock(std::string_view tag) {
  static constexpr std::array<std::string_view, 34> kBlock = {
      "html", "body",   "div",  "p",     "section", "article", "main",   "h1",     "h2",
      "h3",   "h4",     "h5",   "h6",    "li",      "ul",      "ol",     "dl",     "dt",
      "dd",   "blockquote", "pre", "table", "tr",   "td",      "th",     "tbody",  "thead",
      "tfoot", "figure", "figcaption", "address", "center", "caption", "details"};
  return std::find(kBlock.begin(), kBlock.end(), tag) != kBlock.end();
}

// Start tags that implicitly close an open <p>.
bool ClosesParagraph(std::string_view tag) {
  return IsBlock(tag) && tag != "html" && tag != "body" && tag != "td" && tag != "th";
}

const std::unordered_map<std::string_view, char32_t>& NamedEntities() {
  static const std::unordered_map<std::string_view, char32_t> kEntities = {
      {"amp", '&'},       {"lt", '<'},        {"gt", '>'},        {"quot", '"'},      {"apos", '\''},
      {"nbsp", 0xA0},     {"mdash", 0x2014},  {"ndash", 0x2013},  {"hellip", 0x2026}, {"copy", 0xA9},
      {"reg", 0xAE},      {"trade", 0x2122},  {"rsquo", 0x2019},  {"lsquo", 0x2018},  {"ldquo", 0x201C},
      {"rdquo", 0x201D},  {"laquo", 0xAB},    {"raquo", 0xBB},    {"middot", 0xB7},   {"bull", 0x2022},
      {"eacute", 0xE9},   {"egrave", 0xE8},   {"agrave", 0xE0},   {"ccedil", 0xE7},   {"uuml", 0xFC},
      {"ouml", 0xF6},     {"auml", 0xE4},     {"szlig", 0xDF},    {"euro", 0x20AC},   {"pound", 0xA3},
      {"deg", 0xB0},      {"times", 0xD7},    {"ntilde", 0xF1},   {"iacute", 0xED},   {"oacute", 0xF3},
      {"aacute", 0xE1},   {"uacute", 0xFA},   {"ecirc", 0xEA},    {"ocirc", 0xF4},    {"acirc", 0xE2}};
  return kEntities;
}

void DecodeEntitiesInto(std::string_view raw, std::string& out) {
  std::size_t i = 0;
  while (i < raw.size()) {
    if (raw[i] != '&') {
      out.push_back(raw[i++]);
      continue;
    }
    const std::size_t semi = raw.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(raw[i++]);
      continue;
    }
    const std::string_view name = raw.substr(i + 1, semi - i - 1);
    char32_t cp = 0;
    bool ok = false;
    if (name.size() > 1 && name[0] == '#') {
      const bool hex = name[1] == 'x' || name[1] == 'X';
      const std::string_view digits = name.substr(hex ? 2 : 1);
      if (!digits.empty()) {
        ok = true;
        for (char c : digits) {
          const int v = hex ? (std::isxdigit(static_cast<unsigned char>(c))
                                   ? (std::isdigit(static_cast<unsigned char>(c)) ? c - '0' : (std::tolower(c) - 'a' + 10))
                                   : -1)
                            : (std::isdigit(static_cast<unsigned char>(c)) ? c - '0' : -1);
          if (v < 0 || cp > 0x10FFFF) {
            ok = false;
            break;
          }
          cp = cp * (hex ? 16 : 10) + static_cast<char32_t>(v);
        }
        if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) ok = false;
      }
    } else if (auto it = NamedEntities().find(name); it != NamedEntities().end()) {
      cp = it->second;
      ok = true;
    }
    if (ok) {
      unicode::AppendUtf8(out, cp);
      i = semi + 1;
    } else {
      out.push_back(raw[i++]);
    }
  }
}

std::string LowerAscii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

struct Node {
  std::string tag;  // empty for text nodes
  std::string text;
  int parent = -1;
  int depth = 0;
  std::vector<int> children;
  bool in_link = false;
  std::size_t text_len = 0;
  std::size_t link_len = 0;
};

class Dom {
 public:
  explicit Dom(std::string_view html) {
    nodes_.push_back(Node{"#root", {}, -1, 0, {}, false, 0, 0});
    stack_.push_back(0);
    Parse(html);
  }

  std::vector<Node>& nodes() { return nodes_; }

 private:
  int Current() const { return stack_.back(); }

  int AddNode(Node node) {
    const int parent = Current();
    node.parent = parent;
    node.depth = nodes_[static_cast<std::size_t>(parent)].depth + 1;
    node.in_link = nodes_[static_cast<std::size_t>(parent)].in_link || node.tag == "a";
    nodes_.push_back(std::move(node));
    const int id = static_cast<int>(nodes_.size() - 1);
    nodes_[static_cast<std::size_t>(parent)].children.push_back(id);
    return id;
  }

  void AddText(std::string_view raw) {
    if (raw.empty()) return;
    Node n;
    DecodeEntitiesInto(raw, n.text);
    n.text = unicode::SanitizeUtf8(n.text);
    AddNode(std::move(n));
  }

  bool InStack(std::string_view tag, std::string_view barrier = {}) const {
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
      const std::string& t = nodes_[static_cast<std::size_t>(*it)].tag;
      if (t == tag) return true;
      if (!barrier.empty() && t == barrier) return false;
    }
    return false;
  }

  void PopTo(std::string_view tag) {
    while (stack_.size() > 1) {
      const bool match = nodes_[static_cast<std::size_t>(stack_.back())].tag == tag;
      stack_.pop_back();
      if (match) break;
    }
  }

  void StartTag(const std::string& tag, bool self_closing) {
    if (ClosesParagraph(tag) && InStack("p", "div")) PopTo("p");
    if (tag == "li" && InStack("li", "ul") && InStack("li", "ol")) PopTo("li");
    if ((tag == "td" || tag == "th") && (InStack("td", "tr") || InStack("th", "tr"))) {
      PopTo(InStack("td", "tr") ? "td" : "th");
    }
    Node n;
    n.tag = tag;
    const int id = AddNode(std::move(n));
    if (!self_closing && !IsVoid(tag)) stack_.push_back(id);
  }

  void EndTag(const std::string& tag) {
    if (InStack(tag)) PopTo(tag);
  }

  void Parse(std::string_view html) {
    std::size_t i = 0;
    std::size_t text_start = 0;
    while (i < html.size()) {
      if (html[i] != '<') {
        ++i;
        continue;
      }
      // Comments, doctype and processing instructions.
      if (html.substr(i, 4) == "<!--") {
        AddText(html.substr(text_start, i - text_start));
        const std::size_t end = html.find("-->", i + 4);
        i = end == std::string_view::npos ? html.size() : end + 3;
        text_start = i;
        continue;
      }
      if (i + 1 < html.size() && (html[i + 1] == '!' || html[i + 1] == '?')) {
        AddText(html.substr(text_start, i - text_start));
        const std::size_t end = html.find('>', i);
        i = end == std::string_view::npos ? html.size() : end + 1;
        text_start = i;
        continue;
      }
      const bool closing = i + 1 < html.size() && html[i + 1] == '/';
      std::size_t name_start = i + (closing ? 2 : 1);
      std::size_t name_end = name_start;
      while (name_end < html.size() && (std::isalnum(static_cast<unsigned char>(html[name_end])) ||
                                        html[name_end] == '-' || html[name_end] == ':')) {
        ++name_end;
      }
      if (name_end == name_start || !std::isalpha(static_cast<unsigned char>(html[name_start]))) {
        ++i;  // A literal '<' in text.
        continue;
      }
      AddText(html.substr(text_start, i - text_start));
      const std::string tag = LowerAscii(html.substr(name_start, name_end - name_start));
      // Find the closing '>' while respecting quoted attribute values.
      std::size_t j = name_end;
      char quote = 0;
      while (j < html.size()) {
        const char c = html[j];
        if (quote) {
          if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
          quote = c;
        } else if (c == '>') {
          break;
        }
        ++j;
      }
      const bool self_closing = j > 0 && j < html.size() && html[j - 1] == '/';
      i = j < html.size() ? j + 1 : html.size();
      text_start = i;
      if (closing) {
        EndTag(tag);
        continue;
      }
      StartTag(tag, self_closing);
      if (IsRawText(tag) && !self_closing) {
        const std::string close = "</" + tag;
        std::size_t k = i;
        while (true) {
          k = html.find("</", k);
          if (k == std::string_view::npos) break;
          if (LowerAscii(html.substr(k, close.size())) == close) break;
          k += 2;
        }
        const std::size_t content_end = k == std::string_view::npos ? html.size() : k;
        if (tag == "textarea") AddText(html.substr(i, content_end - i));
        PopTo(tag);
        if (k == std::string_view::npos) {
          i = html.size();
        } else {
          const std::size_t gt = html.find('>', k);
          i = gt == std::string_view::npos ? html.size() : gt + 1;
        }
        text_start = i;
      }
    }
    AddText(html.substr(text_start, html.size() - text_start));
  }

  std::vector<Node> nodes_;
  std::vector<int> stack_;
};

bool Excluded(const std::vector<Node>& nodes, int id) {
  for (int n = id; n >= 0; n = nodes[static_cast<std::size_t>(n)].parent) {
    if (IsDropped(nodes[static_cast<std::size_t>(n)].tag)) return true;
  }
  return false;
}

// Collapsed length of a text node: whitespace runs count as one character.
std::size_t CollapsedLength(std::string_view text) {
  std::size_t len = 0;
  bool in_space = true;
  for (std::size_t pos = 0; pos < text.size();) {
    const char32_t cp = unicode::DecodeNext(text, pos);
    if (unicode::IsWhitespace(cp)) {
      in_space = true;
    } else {
      if (in_space && len > 0) ++len;
      in_space = false;
      ++len;
    }
  }
  return len;
}

class TextRenderer {
 public:
  explicit TextRenderer(const std::vector<Node>& nodes) : nodes_(nodes) {}

  std::string Render(int root) {
    Walk(root);
    Flush();
    std::string out;
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      if (i) out.push_back('\n');
      out += lines_[i];
    }
    return out;
  }

 private:
  void Walk(int id) {
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    if (IsDropped(n.tag)) return;
    if (n.tag.empty()) {
      AppendText(n.text);
      return;
    }
    const bool block = IsBlock(n.tag) || n.tag == "br" || n.tag == "hr";
    if (block) Flush();
    for (int c : n.children) Walk(c);
    if (block) Flush();
  }

  void AppendText(std::string_view text) {
    for (std::size_t pos = 0; pos < text.size();) {
      const std::size_t start = pos;
      const char32_t cp = unicode::DecodeNext(text, pos);
      if (unicode::IsWhitespace(cp)) {
        pending_space_ = !line_.empty();
      } else {
        if (pending_space_) line_.push_back(' ');
        pending_space_ = false;
        line_.append(text.substr(start, pos - start));
      }
    }
  }

  void Flush() {
    if (!line_.empty()) lines_.push_back(std::move(line_));
    line_.clear();
    pending_space_ = false;
  }

  const std::vector<Node>& nodes_;
  std::vector<std::string> lines_;
  std::string line_;
  bool pending_space_ = false;
};

}  // namespace

std::string BaselineExtractor::ExtractRaw(std::string_view html) const {
  Dom dom(html);
  std::vector<Node>& nodes = dom.nodes();
  // Children always follow their parent, so a reverse sweep accumulates
  // subtree totals bottom-up.
  for (std::size_t i = nodes.size(); i-- > 1;) {
    Node& n = nodes[i];
    if (IsDropped(n.tag)) {
      n.text_len = n.link_len = 0;
      continue;
    }
    if (n.tag.empty()) {
      n.text_len = CollapsedLength(n.text);
      n.link_len = n.in_link ? n.text_len : 0;
    }
    Node& parent = nodes[static_cast<std::size_t>(n.parent)];
    parent.text_len += n.text_len;
    parent.link_len += n.link_len;
  }

  int best = -1;
  double best_score = 0.0;
  int best_depth = -1;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    if (n.tag.empty() || !IsBlock(n.tag) || n.text_len == 0) continue;
    const double link_frac = static_cast<double>(n.link_len) / static_cast<double>(n.text_len);
    const double score = static_cast<double>(n.text_len) * (1.0 - link_frac);
    if (score > best_score || (score == best_score && score > 0 && n.depth > best_depth)) {
      if (Excluded(nodes, static_cast<int>(i))) continue;
      best = static_cast<int>(i);
      best_score = score;
      best_depth = n.depth;
    }
  }
  // Pages without block structure: fall back to the whole document.
  if (best < 0) best = 0;
  return TextRenderer(nodes).Render(best);
}

ExternalExtractor::ExternalExtractor(std::string command)
    : command_(std::move(command)), id_("external:" + command_) {}

std::string ExternalExtractor::ExtractRaw(std::string_view html) const {
  char path_template[] = "/tmp/refinery-html-XXXXXX";
  const int fd = ::mkstemp(path_template);
  if (fd < 0) throw Error(ErrorCode::kIoError, "mkstemp failed");
  ::close(fd);
  const std::filesystem::path path(path_template);
  {
    std::ofstream out(path, std::ios::binary);
    out.write(html.data(), static_cast<std::streamsize>(html.size()));
  }
  const std::string cmd = command_ + " < '" + path.string() + "'";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    std::filesystem::remove(path);
    throw Error(ErrorCode::kIoError, "cannot run extractor '" + command_ + "'");
  }
  std::string text;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) text.append(buf.data(), n);
  const int status = ::pclose(pipe);
  std::filesystem::remove(path);
  if (status != 0) throw Error(ErrorCode::kIoError, "extractor '" + command_ + "' failed");
  return unicode::SanitizeUtf8(text);
}

std::unique_ptr<Extractor> MakeExtractor(std::string_view spec) {
  if (spec == "baseline") return std::make_unique<BaselineExtractor>();
  if (spec.starts_with("external:") && spec.size() > 9) {
    return std::make_unique<ExternalExtractor>(std::string(spec.substr(9)));
  }
  throw Error(ErrorCode::kConfigError, "unknown extractor '" + std::string(spec) + "'");
}

ExtractionResult ExtractAndFormat(const Extractor& extractor, std::string_view html) {
  ExtractionResult result;
  result.extractor_id = std::string(extractor.id());
  result.text = FormatText(extractor.ExtractRaw(html));
  result.discarded = std::all_of(result.text.begin(), result.text.end(),
                                 [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  return result;
}

ExtractionResult ExtractMainContent(std::string_view html) {
  static const BaselineExtractor kBaseline;
  return ExtractAndFormat(kBaseline, html);
}

}  // namespace refinery
