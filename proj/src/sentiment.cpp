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

#include "cfp/sentiment.hpp"

#include <cmath>
#include "json.hpp"
#include <unordered_map>
#include <unordered_set>

#include "cfp/corpus.hpp"
#include "cfp/error.hpp"
#include "cfp/resources.hpp"
#include "cfp/text.hpp"

namespace cfp::sentiment {
namespace {

// Rule constants of the reference implementation (vaderSentiment 3.3.2).
constexpr double kBoostIncrement = 0.293;
constexpr double kBoostDecrement = -0.293;
constexpr double kCapsIncrement = 0.733;
constexpr double kNegationScalar = -0.74;
constexpr double kExclamationStep = 0.292;
constexpr double kQuestionStep = 0.18;
constexpr double kQuestionCap = 0.96;
constexpr double kNormalizationAlpha = 15.0;

const std::unordered_set<std::string>& negations() {
  static const std::unordered_set<std::string> words = {
      "aint", "arent", "cannot", "cant", "couldnt", "darent", "didnt", "doesnt",
      "ain't", "aren't", "can't", "couldn't", "daren't", "didn't", "doesn't",
      "dont", "hadnt", "hasnt", "havent", "isnt", "mightnt", "mustnt", "neither",
      "don't", "hadn't", "hasn't", "haven't", "isn't", "mightn't", "mustn't",
      "neednt", "needn't", "never", "none", "nope", "nor", "not", "nothing", "nowhere",
      "oughtnt", "shant", "shouldnt", "uhuh", "wasnt", "werent",
      "oughtn't", "shan't", "shouldn't", "uh-uh", "wasn't", "weren't",
      "without", "wont", "wouldnt", "won't", "wouldn't", "rarely", "seldom", "despite"};
  return words;
}

const std::unordered_map<std::string, double>& boosters() {
  static const std::unordered_map<std::string, double> table = [] {
    std::unordered_map<std::string, double> t;
    for (const char* w :
         {"absolutely", "amazingly", "awfully", "completely", "considerable", "considerably",
          "decidedly", "deeply", "effing", "enormous", "enormously", "entirely", "especially",
          "exceptional", "exceptionally", "extreme", "extremely", "fabulously", "flipping",
          "flippin", "frackin", "fracking", "fricking", "frickin", "frigging", "friggin", "fully",
          "fuckin", "fucking", "fuggin", "fugging", "greatly", "hella", "highly", "hugely",
          "incredible", "incredibly", "intensely", "major", "majorly", "more", "most",
          "particularly", "purely", "quite", "really", "remarkably", "so", "substantially",
          "thoroughly", "total", "totally", "tremendous", "tremendously", "uber",
          "unbelievably", "unusually", "utter", "utterly", "very"}) {
      t.emplace(w, kBoostIncrement);
    }
    for (const char* w :
         {"almost", "barely", "hardly", "just enough", "kind of", "kinda", "kindof", "kind-of",
          "less", "little", "marginal", "marginally", "occasional", "occasionally", "partly",
          "scarce", "scarcely", "slight", "slightly", "somewhat", "sort of", "sorta", "sortof",
          "sort-of"}) {
      t.emplace(w, kBoostDecrement);
    }
    return t;
  }();
  return table;
}

const std::unordered_map<std::string, double>& special_cases() {
  static const std::unordered_map<std::string, double> table = {
      {"the shit", 3},       {"the bomb", 3},         {"bad ass", 1.5},
      {"badass", 1.5},       {"bus stop", 0.0},       {"yeah right", -2},
      {"kiss of death", -1.5}, {"to die for", 3},     {"beating heart", 3.5}};
  return table;
}

bool is_negated(const std::string& lower_word) {
  return negations().count(lower_word) > 0 || lower_word.find("n't") != std::string::npos;
}

double normalize(double score) {
  double norm = score / std::sqrt(score * score + kNormalizationAlpha);
  if (norm < -1.0) return -1.0;
  if (norm > 1.0) return 1.0;
  return norm;
}

std::string strip_punc_if_word(std::string_view token) {
  std::size_t b = 0;
  std::size_t e = token.size();
  while (b < e && text::is_ascii_punct(token[b])) ++b;
  while (e > b && text::is_ascii_punct(token[e - 1])) --e;
  std::string_view stripped = token.substr(b, e - b);
  if (text::code_point_count(stripped) <= 2) return std::string(token);
  return std::string(stripped);
}

// Per-sentence working state mirroring the reference SentiText.
struct Tokens {
  std::vector<std::string> words;
  std::vector<std::string> lower;
  bool cap_differential = false;
};

Tokens tokenize(std::string_view text_value) {
  Tokens t;
  for (auto raw : text::split_whitespace(text_value)) {
    t.words.push_back(strip_punc_if_word(raw));
    t.lower.push_back(text::to_lower(t.words.back()));
  }
  std::size_t allcaps = 0;
  for (const auto& w : t.words) {
    if (text::is_upper_word(w)) ++allcaps;
  }
  std::size_t diff = t.words.size() - allcaps;
  t.cap_differential = diff > 0 && diff < t.words.size();
  return t;
}

double scalar_inc_dec(const std::string& word, const std::string& word_lower, double valence,
                      bool cap_differential) {
  double scalar = 0.0;
  auto it = boosters().find(word_lower);
  if (it != boosters().end()) {
    scalar = it->second;
    if (valence < 0) scalar *= -1;
    if (text::is_upper_word(word) && cap_differential) {
      if (valence > 0) {
        scalar += kCapsIncrement;
      } else {
        scalar -= kCapsIncrement;
      }
    }
  }
  return scalar;
}

double negation_check(double valence, const std::vector<std::string>& w, int start_i,
                      std::size_t i) {
  if (start_i == 0) {
    if (is_negated(w[i - 1])) valence *= kNegationScalar;
  } else if (start_i == 1) {
    if (w[i - 2] == "never" && (w[i - 1] == "so" || w[i - 1] == "this")) {
      valence *= 1.25;
    } else if (w[i - 2] == "without" && w[i - 1] == "doubt") {
      // unchanged
    } else if (is_negated(w[i - 2])) {
      valence *= kNegationScalar;
    }
  } else if (start_i == 2) {
    if ((w[i - 3] == "never" && (w[i - 2] == "so" || w[i - 2] == "this")) ||
        (w[i - 1] == "so" || w[i - 1] == "this")) {
      valence *= 1.25;
    } else if (w[i - 3] == "without" && (w[i - 2] == "doubt" || w[i - 1] == "doubt")) {
      // unchanged
    } else if (is_negated(w[i - 3])) {
      valence *= kNegationScalar;
    }
  }
  return valence;
}

double special_idioms_check(double valence, const std::vector<std::string>& w, std::size_t i) {
  const auto& cases = special_cases();
  const std::string onezero = w[i - 1] + " " + w[i];
  const std::string twoonezero = w[i - 2] + " " + w[i - 1] + " " + w[i];
  const std::string twoone = w[i - 2] + " " + w[i - 1];
  const std::string threetwoone = w[i - 3] + " " + w[i - 2] + " " + w[i - 1];
  const std::string threetwo = w[i - 3] + " " + w[i - 2];
  for (const std::string* seq : {&onezero, &twoonezero, &twoone, &threetwoone, &threetwo}) {
    auto it = cases.find(*seq);
    if (it != cases.end()) {
      valence = it->second;
      break;
    }
  }
  if (w.size() - 1 > i) {
    auto it = cases.find(w[i] + " " + w[i + 1]);
    if (it != cases.end()) valence = it->second;
  }
  if (w.size() - 1 > i + 1) {
    auto it = cases.find(w[i] + " " + w[i + 1] + " " + w[i + 2]);
    if (it != cases.end()) valence = it->second;
  }
  for (const std::string* ngram : {&threetwoone, &threetwo, &twoone}) {
    auto it = boosters().find(*ngram);
    if (it != boosters().end()) valence += it->second;
  }
  return valence;
}

double least_check(double valence, const std::vector<std::string>& w, std::size_t i,
                   const Lexicon& lexicon) {
  if (i > 1 && !lexicon.contains(w[i - 1]) && w[i - 1] == "least") {
    if (w[i - 2] != "at" && w[i - 2] != "very") valence *= kNegationScalar;
  } else if (i > 0 && !lexicon.contains(w[i - 1]) && w[i - 1] == "least") {
    valence *= kNegationScalar;
  }
  return valence;
}

// Contrastive "but": the reference locates each score by value with
// list.index(), so equal scores share one slot. That behaviour is kept.
void but_check(const std::vector<std::string>& w, std::vector<double>& sentiments) {
  std::size_t bi = w.size();
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] == "but") {
      bi = k;
      break;
    }
  }
  if (bi == w.size()) return;
  for (std::size_t k = 0; k < sentiments.size(); ++k) {
    const double sentiment = sentiments[k];
    std::size_t si = 0;
    while (sentiments[si] != sentiment) ++si;
    if (si < bi) {
      sentiments[si] = sentiment * 0.5;
    } else if (si > bi) {
      sentiments[si] = sentiment * 1.5;
    }
  }
}

double punctuation_emphasis(std::string_view text_value) {
  std::size_t ep = 0;
  std::size_t qm = 0;
  for (char c : text_value) {
    if (c == '!') ++ep;
    if (c == '?') ++qm;
  }
  if (ep > 4) ep = 4;
  double amplifier = static_cast<double>(ep) * kExclamationStep;
  if (qm > 1) amplifier += qm <= 3 ? static_cast<double>(qm) * kQuestionStep : kQuestionCap;
  return amplifier;
}

}  // namespace

Lexicon Lexicon::builtin() {
  static const Lexicon lexicon =
      parse(resources::vader_lexicon(), std::string(resources::kLexiconVersion));
  return lexicon;
}

Lexicon Lexicon::from_file(const std::string& path) {
  return parse(text::read_file(path), path);
}

Lexicon Lexicon::parse(std::string_view tsv, std::string source_version) {
  Lexicon lex;
  lex.source_version_ = std::move(source_version);
  std::size_t line_no = 0;
  for (const auto& raw : text::split(tsv, '\n')) {
    ++line_no;
    std::string_view line = text::trim(raw);
    if (line.empty()) continue;
    auto cols = text::split(line, '\t');
    if (cols.size() < 2) {
      fail(ErrorCode::kParse, "lexicon line " + std::to_string(line_no) + " has fewer than two columns");
    }
    char* end = nullptr;
    double v = std::strtod(cols[1].c_str(), &end);
    if (end == cols[1].c_str()) {
      fail(ErrorCode::kParse, "lexicon line " + std::to_string(line_no) + " has a non-numeric valence");
    }
    lex.entries_[cols[0]] = v;
  }
  if (lex.entries_.empty()) fail(ErrorCode::kParse, "sentiment lexicon is empty");
  return lex;
}

const double* Lexicon::find(std::string_view token) const {
  auto it = entries_.find(std::string(token));
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> Lexicon::words() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [k, v] : entries_) out.push_back(k);
  return out;
}

EmojiTable EmojiTable::builtin() {
  static const EmojiTable table = parse(resources::emoji_lexicon());
  return table;
}

EmojiTable EmojiTable::parse(std::string_view tsv) {
  EmojiTable t;
  for (const auto& raw : text::split(tsv, '\n')) {
    std::string_view line = text::trim(raw);
    if (line.empty()) continue;
    auto cols = text::split(line, '\t');
    if (cols.size() < 2) continue;
    t.entries_[cols[0]] = cols[1];
  }
  return t;
}

const std::string* EmojiTable::find(std::string_view code_point_utf8) const {
  auto it = entries_.find(std::string(code_point_utf8));
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<FlipRule> default_flip_rules() { return parse_flip_rules(resources::flip_rules()); }

std::vector<FlipRule> parse_flip_rules(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("flip rules are not valid JSON: ") + e.what());
  }
  if (!j.is_array()) fail(ErrorCode::kParse, "flip rules must be a JSON array");
  std::vector<FlipRule> rules;
  for (const auto& item : j) {
    FlipRule r;
    try {
      r.target = text::to_lower(item.at("target").get<std::string>());
      for (const auto& t : item.at("triggers")) r.triggers.insert(text::to_lower(t.get<std::string>()));
      r.window = item.value("window", 2);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::kParse, std::string("malformed flip rule: ") + e.what());
    }
    if (r.window < 1) fail(ErrorCode::kParse, "flip rule window must be at least 1");
    if (r.target.empty() || r.triggers.empty()) {
      fail(ErrorCode::kParse, "flip rule needs a target and at least one trigger");
    }
    rules.push_back(std::move(r));
  }
  return rules;
}

std::vector<std::string> scoring_tokens(std::string_view text_value) {
  std::vector<std::string> out;
  for (auto raw : text::split_whitespace(text_value)) out.push_back(strip_punc_if_word(raw));
  return out;
}

Analyzer::Analyzer()
    : Analyzer(Lexicon::builtin(), EmojiTable::builtin(), default_flip_rules()) {}

Analyzer::Analyzer(Lexicon lexicon, EmojiTable emojis, std::vector<FlipRule> rules)
    : lexicon_(std::move(lexicon)), emojis_(std::move(emojis)), rules_(std::move(rules)) {}

SentenceScore Analyzer::score_sentence(std::string_view sentence) const {
  return score_sentence(sentence, true);
}

SentenceScore Analyzer::score_sentence(std::string_view sentence, bool apply_flips) const {
  SentenceScore result;
  result.text = std::string(sentence);

  // Emoji code points become their textual descriptions.
  std::string replaced;
  replaced.reserve(sentence.size());
  bool prev_space = true;
  for (std::size_t i = 0; i < sentence.size();) {
    std::size_t at = i;
    char32_t cp = text::next_code_point(sentence, i);
    std::string_view bytes = sentence.substr(at, i - at);
    if (cp >= 0x80) {
      if (const std::string* description = emojis_.find(bytes)) {
        if (!prev_space) replaced.push_back(' ');
        replaced += *description;
        prev_space = false;
        continue;
      }
    }
    replaced.append(bytes);
    prev_space = cp == ' ';
  }
  const std::string_view text_value = text::strip_unicode_space(replaced);
  const Tokens tokens = tokenize(text_value);
  const auto& w = tokens.lower;
  const std::size_t n = w.size();

  std::vector<double> flip(n, 1.0);
  if (apply_flips) {
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& rule : rules_) {
        if (w[i] != rule.target) continue;
        const std::size_t window = static_cast<std::size_t>(rule.window);
        const std::size_t lo = i >= window ? i - window : 0;
        const std::size_t hi = std::min(n - 1, i + window);
        for (std::size_t j = lo; j <= hi; ++j) {
          if (j != i && rule.triggers.count(w[j])) {
            flip[i] = -flip[i];
            result.flipped_terms.push_back({tokens.words[i], i});
            break;
          }
        }
      }
    }
  }

  std::vector<double> sentiments;
  sentiments.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (boosters().count(w[i])) {
      sentiments.push_back(0.0);
      continue;
    }
    if (i < n - 1 && w[i] == "kind" && w[i + 1] == "of") {
      sentiments.push_back(0.0);
      continue;
    }
    double valence = 0.0;
    if (const double* lex_value = lexicon_.find(w[i])) {
      ++result.lexicon_hits;
      const double base = *lex_value * flip[i];
      valence = base;
      if (w[i] == "no" && i != n - 1 && lexicon_.contains(w[i + 1])) valence = 0.0;
      if ((i > 0 && w[i - 1] == "no") || (i > 1 && w[i - 2] == "no") ||
          (i > 2 && w[i - 3] == "no" && (w[i - 1] == "or" || w[i - 1] == "nor"))) {
        valence = base * kNegationScalar;
      }
      if (text::is_upper_word(tokens.words[i]) && tokens.cap_differential) {
        if (valence > 0) {
          valence += kCapsIncrement;
        } else {
          valence -= kCapsIncrement;
        }
      }
      for (int start_i = 0; start_i < 3; ++start_i) {
        const std::size_t offset = static_cast<std::size_t>(start_i) + 1;
        if (i > static_cast<std::size_t>(start_i) && !lexicon_.contains(w[i - offset])) {
          double s = scalar_inc_dec(tokens.words[i - offset], w[i - offset], valence,
                                    tokens.cap_differential);
          if (start_i == 1 && s != 0) s *= 0.95;
          if (start_i == 2 && s != 0) s *= 0.9;
          valence += s;
          valence = negation_check(valence, w, start_i, i);
          if (start_i == 2) valence = special_idioms_check(valence, w, i);
        }
      }
      valence = least_check(valence, w, i, lexicon_);
    }
    sentiments.push_back(valence);
  }

  but_check(w, sentiments);

  if (!sentiments.empty()) {
    double sum = 0.0;
    for (double s : sentiments) sum += s;
    const double punct = punctuation_emphasis(text_value);
    if (sum > 0) {
      sum += punct;
    } else if (sum < 0) {
      sum -= punct;
    }
    result.compound = text::round_to(normalize(sum), 4);
  }
  return result;
}

ArticleSentiment Analyzer::score_text(std::string_view article_id, std::string_view body,
                                      bool skip_empty) const {
  ArticleSentiment out;
  out.article_id = std::string(article_id);
  for (const auto& sentence : split_sentences(body)) {
    out.sentence_scores.push_back(score_sentence(sentence));
  }
  out.n_sentences = out.sentence_scores.size();
  double sum = 0.0;
  std::size_t counted = 0;
  for (const auto& s : out.sentence_scores) {
    if (skip_empty && s.lexicon_hits == 0) continue;
    sum += s.compound;
    ++counted;
  }
  out.empty = out.n_sentences == 0;
  out.mean_compound = counted == 0 ? 0.0 : sum / static_cast<double>(counted);
  return out;
}

ArticleSentiment Analyzer::score_article(const corpus::Article& article, bool skip_empty) const {
  return score_text(article.id, article.body, skip_empty);
}

}  // namespace cfp::sentiment
