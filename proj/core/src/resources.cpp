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

#include "refinery/resources.hpp"

namespace refinery::resources {

const std::unordered_set<std::string>& HqDomains() {
  static const std::unordered_set<std::string> kDomains = {
      "arxiv.org",        "askubuntu.com",     "stackoverflow.com", "stackapps.com",
      "stackexchange.com", "mathoverflow.net", "exporter.nih.gov",  "ncbi.nlm.nih.gov",
      "github.com",       "irclogs.ubuntu.com", "news.ycombinator.com", "courtlistener.com",
      "reddit.com",       "statmt.org",        "uspto.gov",         "wikipedia.org",
  };
  return kDomains;
}

const std::vector<std::string>& BlockCategories() {
  static const std::vector<std::string> kCategories = {
      "adult", "phishing", "dating", "gambling", "filehosting", "ddos", "agressif", "chat", "mixed_adult", "arjel",
  };
  return kCategories;
}

ScoringWordLists DefaultWordLists() {
  ScoringWordLists lists;
  lists.strict_subword = {"xvideos", "groupsex"};
  lists.hard_whole_word = {"porn", "xxx", "orgy"};
  lists.soft_words = {"sex", "webcam", "escort", "dick"};
  lists.soft_threshold = 2;
  return lists;
}

const std::unordered_set<std::string>& EnglishStopwords() {
  static const std::unordered_set<std::string> kWords = {"the", "be", "to", "of", "and", "that", "have", "with"};
  return kWords;
}

const std::unordered_set<std::string>& EngagementWords() {
  static const std::unordered_set<std::string> kWords = {
      "likes",    "like",    "shares",  "share",  "comments", "comment",
      "views",    "view",    "followers", "follower", "retweets", "retweet",
  };
  return kWords;
}

std::vector<LinePattern> DefaultLinePatterns() {
  return {
      {PatternPosition::kStart, "sign-in"},
      {PatternPosition::kStart, "sign in"},
      {PatternPosition::kStart, "log in"},
      {PatternPosition::kStart, "sign up"},
      {PatternPosition::kEnd, "read more"},
      {PatternPosition::kEnd, "continue reading"},
      {PatternPosition::kEnd, "see more"},
      {PatternPosition::kAnywhere, "items in cart"},
      {PatternPosition::kAnywhere, "add to cart"},
      {PatternPosition::kAnywhere, "skip to content"},
  };
}

}  // namespace refinery::resources
