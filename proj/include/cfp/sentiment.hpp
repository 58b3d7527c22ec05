/* Copyright 2026 The cfp Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace cfp::corpus {
struct Article;
}

namespace cfp::sentiment {

// Token valence table in the reference TSV layout
// (token, mean valence, SD, raw ratings); only the first two columns are read.
class Lexicon {
 public:
  static Lexicon builtin();
  static Lexicon from_file(const std::string& path);
  static Lexicon parse(std::string_view tsv, std::string source_version);

  // Exact-key lookup; callers lower-case first, matching the reference.
  const double* find(std::string_view token) const;
  bool contains(std::string_view token) const { return find(token) != nullptr; }
  std::size_t size() const { return entries_.size(); }
  const std::string& source_version() const { return source_version_; }
  std::vector<std::string> words() const;

 private:
  std::unordered_map<std::string, double> entries_;
  std::string source_version_;
};

// Single code point emoji -> textual description.
class EmojiTable {
 public:
  static EmojiTable builtin();
  static EmojiTable parse(std::string_view tsv);
  const std::string* find(std::string_view code_point_utf8) const;

 private:
  std::unordered_map<std::string, std::string> entries_;
};

struct FlipRule {
  std::string target;
  std::unordered_set<std::string> triggers;
  int window = 2;
};

std::vector<FlipRule> default_flip_rules();
// JSON array of {"target", "triggers", "window"} objects.
std::vector<FlipRule> parse_flip_rules(std::string_view json_text);

struct FlippedTerm {
  std::string token;
  std::size_t position = 0;
};

struct SentenceScore {
  std::string text;
  double compound = 0.0;
  std::vector<FlippedTerm> flipped_terms;
  std::size_t lexicon_hits = 0;
};

struct ArticleSentiment {
  std::string article_id;
  std::vector<SentenceScore> sentence_scores;
  double mean_compound = 0.0;
  std::size_t n_sentences = 0;
  bool empty = false;  // no sentences found
};

// The tokenizer the scorer uses: whitespace split, then leading/trailing ASCII
// punctuation stripped unless fewer than three code points would remain.
std::vector<std::string> scoring_tokens(std::string_view text);

std::vector<std::string> split_sentences(std::string_view body);

class Analyzer {
 public:
  Analyzer();  // builtin lexicon, emoji table and flip rules
  Analyzer(Lexicon lexicon, EmojiTable emojis, std::vector<FlipRule> rules);

  // Compound polarity rounded to four decimals, as the reference reports it.
  SentenceScore score_sentence(std::string_view sentence) const;
  SentenceScore score_sentence(std::string_view sentence, bool apply_flips) const;

  // When skip_empty is set, sentences without lexicon hits are left out of
  // the mean (they are still listed).
  ArticleSentiment score_text(std::string_view article_id, std::string_view body,
                              bool skip_empty = false) const;
  ArticleSentiment score_article(const corpus::Article& article,
                                 bool skip_empty = false) const;

  const Lexicon& lexicon() const { return lexicon_; }
  const std::vector<FlipRule>& rules() const { return rules_; }

 private:
  Lexicon lexicon_;
  EmojiTable emojis_;
  std::vector<FlipRule> rules_;
};

}  // namespace cfp::sentiment
