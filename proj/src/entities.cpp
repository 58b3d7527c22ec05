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

#include "cfp/entities.hpp"

#include <algorithm>

#include "cfp/corpus.hpp"
#include "cfp/error.hpp"
#include "cfp/resources.hpp"
#include "cfp/text.hpp"

namespace cfp::entities {
namespace {

std::vector<std::string> parse_list(std::string_view contents) {
  std::vector<std::string> out;
  for (const auto& raw : text::split(contents, '\n')) {
    std::string_view line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    out.emplace_back(line);
  }
  return out;
}

std::vector<std::string> load_list(const std::string& path, std::string_view fallback) {
  return parse_list(path.empty() ? std::string(fallback) : text::read_file(path));
}

// Lower-case words that may sit inside a capitalized name.
bool is_connector(std::string_view key) {
  return key == "of" || key == "for" || key == "and" || key == "the" || key == "de" ||
         key == "du" || key == "la" || key == "des" || key == "&";
}

// Words that may precede a title cue ("Prime Minister", "Chief Medical Officer").
bool is_title_modifier(std::string_view key) {
  static const std::unordered_set<std::string_view> words = {
      "Prime", "Deputy", "Health", "Finance", "Foreign", "Chief", "Public", "Medical",
      "Vice", "Acting", "Former", "Associate", "General", "Attorney", "Federal",
      "Provincial", "Interim", "Senior", "Assistant", "Defence", "Defense", "Transport",
      "Immigration", "Environment", "Education", "Industry", "Labour", "Trade", "Justice",
      "Treasury", "Board", "Executive", "Managing", "Lieutenant", "Regional", "Team",
      "Head", "Opposition", "Party", "House", "Speaker", "Officer"};
  return words.count(key) > 0;
}

// Heads that turn a capitalized run into an organization name.
bool is_org_head(std::string_view key) {
  static const std::unordered_set<std::string_view> words = {
      "Inc", "Corp", "Ltd", "Co", "LLC", "Limited", "Company", "Corporation", "Group",
      "Association", "Agency", "Foundation", "Institute", "University", "College",
      "Hospital", "Council", "Commission", "Committee", "Party", "Bank", "Union",
      "Society", "Authority", "Board", "Department", "Ministry", "Services", "Centre",
      "Center", "Network", "Airlines", "Airways", "Industries", "Partners", "Coalition",
      "Federation", "Organization", "Organisation", "Laboratory", "Laboratories",
      "Clinic", "Office", "Police", "Court", "Tribunal", "Secretariat", "Bureau",
      "Pharmaceuticals", "Holdings", "Enterprises", "Systems", "Technologies", "Media"};
  return words.count(key) > 0;
}

bool is_capitalized(std::string_view key) {
  if (key.empty()) return false;
  std::size_t i = 0;
  const char32_t cp = text::next_code_point(key, i);
  return text::is_cased_upper(cp) || (cp >= '0' && cp <= '9' && key.size() > 1 &&
                                      text::is_cased_upper(key[1]));
}

bool is_acronym(std::string_view key) {
  return text::code_point_count(key) >= 2 && text::is_upper_word(key);
}

bool is_opening(char c) { return c == '"' || c == '\'' || c == '(' || c == '['; }

bool is_closing(char c) {
  return c == ',' || c == ';' || c == ':' || c == '!' || c == '?' || c == '"' ||
         c == '\'' || c == ')' || c == ']' || c == '.';
}

struct Token {
  std::string key;       // surface with surrounding punctuation removed
  bool opens = false;    // leading punctuation: a run cannot continue into it
  bool closes = false;   // trailing punctuation: a run ends after it
};

void strip_suffix(std::string& s, std::string_view suffix) {
  s.erase(s.size() - suffix.size());
}

}  // namespace

std::string_view kind_name(EntityKind kind) {
  switch (kind) {
    case EntityKind::kPerson:
      return "person";
    case EntityKind::kGpe:
      return "gpe";
    case EntityKind::kOrg:
      return "org";
  }
  return "person";
}

bool parse_kind(std::string_view label, EntityKind& out) {
  const std::string lower = text::to_lower(label);
  if (lower == "person" || lower == "per") {
    out = EntityKind::kPerson;
  } else if (lower == "gpe") {
    out = EntityKind::kGpe;
  } else if (lower == "org") {
    out = EntityKind::kOrg;
  } else {
    return false;
  }
  return true;
}

std::size_t EntityTally::count(EntityKind kind) const {
  switch (kind) {
    case EntityKind::kPerson:
      return person;
    case EntityKind::kGpe:
      return gpe;
    case EntityKind::kOrg:
      return org;
  }
  return 0;
}

Gazetteers Gazetteers::builtin() {
  Gazetteers g;
  g.gpe = parse_list(resources::gazetteer_gpe());
  g.org = parse_list(resources::gazetteer_org());
  g.person_cues = parse_list(resources::person_cues());
  g.non_entity = parse_list(resources::non_entity_words());
  return g;
}

Gazetteers Gazetteers::load(const std::string& gpe_path, const std::string& org_path,
                            const std::string& cues_path, const std::string& non_entity_path) {
  Gazetteers g;
  g.gpe = load_list(gpe_path, resources::gazetteer_gpe());
  g.org = load_list(org_path, resources::gazetteer_org());
  g.person_cues = load_list(cues_path, resources::person_cues());
  g.non_entity = load_list(non_entity_path, resources::non_entity_words());
  return g;
}

BuiltinTagger::BuiltinTagger() : BuiltinTagger(Gazetteers::builtin()) {}

BuiltinTagger::BuiltinTagger(const Gazetteers& gazetteers)
    : gpe_(make_phrases(gazetteers.gpe)), org_(make_phrases(gazetteers.org)) {
  cues_.insert(gazetteers.person_cues.begin(), gazetteers.person_cues.end());
  non_entity_.insert(gazetteers.non_entity.begin(), gazetteers.non_entity.end());
}

BuiltinTagger::Phrases BuiltinTagger::make_phrases(const std::vector<std::string>& entries) {
  Phrases p;
  for (const auto& e : entries) {
    auto parts = text::split_whitespace(e);
    if (parts.empty()) continue;
    std::vector<std::string> words;
    for (auto part : parts) {
      std::string w(part);
      // "Washington, D.C." is matched token by token without the comma.
      while (!w.empty() && w.back() == ',') w.pop_back();
      words.push_back(std::move(w));
    }
    p.set.insert(text::join(words, " "));
    p.max_tokens = std::max(p.max_tokens, words.size());
  }
  return p;
}

std::size_t BuiltinTagger::longest_match(const Phrases& phrases,
                                         const std::vector<std::string>& keys,
                                         std::size_t pos, std::size_t end) const {
  const std::size_t limit = std::min(end - pos, phrases.max_tokens);
  std::string joined;
  std::size_t best = 0;
  for (std::size_t n = 1; n <= limit; ++n) {
    if (n > 1) joined.push_back(' ');
    joined += keys[pos + n - 1];
    if (phrases.set.count(joined)) best = n;
  }
  return best;
}

std::vector<EntityMention> BuiltinTagger::tag(std::string_view, std::string_view text_value) {
  return tag_text(text_value);
}

std::vector<EntityMention> BuiltinTagger::tag_text(std::string_view text_value) const {
  // Token keys with punctuation removed, plus run-breaking flags.
  std::vector<Token> tokens;
  for (auto raw : text::split_whitespace(text_value)) {
    Token t;
    std::string_view s = raw;
    while (!s.empty() && is_opening(s.front())) {
      s.remove_prefix(1);
      t.opens = true;
    }
    std::string key(s);
    bool changed = true;
    while (changed && !key.empty()) {
      changed = false;
      const char c = key.back();
      if (c == '.') {
        // Keep the period of dotted abbreviations (U.S., B.C.) and treat
        // titles and initials ("Dr.", "J.") as non-final.
        std::string bare = key.substr(0, key.size() - 1);
        if (bare.find('.') != std::string::npos) break;
        key = bare;
        if (!(cues_.count(key) || (key.size() == 1 && is_capitalized(key)))) t.closes = true;
        changed = true;
      } else if (is_closing(c)) {
        key.pop_back();
        t.closes = true;
        changed = true;
      } else if (text::ends_with(key, "\xE2\x80\x9D") || text::ends_with(key, "\xE2\x80\x99")) {
        strip_suffix(key, "\xE2\x80\x9D");
        t.closes = true;
        changed = true;
      }
    }
    for (std::string_view poss : {std::string_view("'s"), std::string_view("\xE2\x80\x99s")}) {
      if (text::ends_with(key, poss) && key.size() > poss.size() && !org_.set.count(key) &&
          !gpe_.set.count(key)) {
        strip_suffix(key, poss);
        t.closes = true;
        break;
      }
    }
    if (text::starts_with(key, "\xE2\x80\x9C") || text::starts_with(key, "\xE2\x80\x98")) {
      key.erase(0, 3);
      t.opens = true;
    }
    t.key = std::move(key);
    tokens.push_back(std::move(t));
  }

  std::vector<std::string> keys;
  keys.reserve(tokens.size());
  for (const auto& t : tokens) keys.push_back(t.key);

  std::vector<EntityMention> mentions;
  auto emit = [&](EntityKind kind, std::size_t b, std::size_t e) {
    std::vector<std::string> words(keys.begin() + static_cast<std::ptrdiff_t>(b),
                                   keys.begin() + static_cast<std::ptrdiff_t>(e));
    mentions.push_back({text::join(words, " "), kind, b, e});
  };
  auto gazetteer_start = [&](std::size_t pos, std::size_t end) {
    return longest_match(org_, keys, pos, end) > 0 || longest_match(gpe_, keys, pos, end) > 0;
  };
  auto nameable = [&](std::size_t j) {
    const std::string& k = keys[j];
    return is_capitalized(k) && !is_acronym(k) && !non_entity_.count(k) && !cues_.count(k) &&
           !is_connector(k);
  };

  std::size_t i = 0;
  const std::size_t n = tokens.size();
  while (i < n) {
    if (!is_capitalized(keys[i])) {
      ++i;
      continue;
    }
    // Maximal capitalized run, allowing lower-case connectors inside it.
    std::size_t end = i + 1;
    while (end < n && !tokens[end - 1].closes && !tokens[end].opens) {
      if (is_capitalized(keys[end])) {
        ++end;
        continue;
      }
      if (is_connector(keys[end]) && end + 1 < n && !tokens[end].closes &&
          !tokens[end + 1].opens && is_capitalized(keys[end + 1])) {
        end += 2;
        continue;
      }
      break;
    }

    std::size_t p = i;
    while (p < end) {
      const std::string& key = keys[p];
      if (is_connector(key)) {
        ++p;
        continue;
      }
      if (std::size_t len = longest_match(org_, keys, p, end)) {
        emit(EntityKind::kOrg, p, p + len);
        p += len;
        continue;
      }
      if (non_entity_.count(key)) {
        ++p;
        continue;
      }
      // Organization head word, optionally extended by "of <Name>".
      {
        std::size_t q = p;
        while (q < end && q < p + 6 && !is_org_head(keys[q]) && !is_connector(keys[q]) &&
               !non_entity_.count(keys[q]) && !cues_.count(keys[q])) {
          ++q;
        }
        if (q < end && q < p + 6 && is_org_head(keys[q])) {
          std::size_t stop = q + 1;
          if (stop + 1 < end && (keys[stop] == "of" || keys[stop] == "for")) stop = end;
          if (stop > p + 1) {
            emit(EntityKind::kOrg, p, stop);
            p = stop;
            continue;
          }
        }
      }
      if (std::size_t len = longest_match(gpe_, keys, p, end)) {
        emit(EntityKind::kGpe, p, p + len);
        p += len;
        continue;
      }
      // Title cue, possibly after modifiers, followed by a name.
      {
        std::size_t c = p;
        while (c < end && !cues_.count(keys[c]) && is_title_modifier(keys[c])) ++c;
        if (c < end && cues_.count(keys[c])) {
          while (c + 1 < end && (cues_.count(keys[c + 1]) || is_title_modifier(keys[c + 1]))) ++c;
          std::size_t j = c + 1;
          while (j < end && j < c + 4 && nameable(j) && !gazetteer_start(j, end)) ++j;
          if (j > c + 1) emit(EntityKind::kPerson, c + 1, j);
          p = j;
          continue;
        }
      }
      // Two or three consecutive name-like words.
      {
        std::size_t j = p;
        while (j < end && j < p + 3 && nameable(j) && (j == p || !gazetteer_start(j, end))) ++j;
        if (j - p >= 2) {
          emit(EntityKind::kPerson, p, j);
          p = j;
          continue;
        }
      }
      ++p;
    }
    i = end;
  }
  return mentions;
}

std::size_t token_length(std::string_view body) { return text::split_whitespace(body).size(); }

std::string normalize_surface(std::string_view surface) {
  return text::to_lower(text::collapse_whitespace(surface));
}

EntityTally tally(std::string_view article_id, std::string_view body,
                  const std::vector<EntityMention>& mentions) {
  EntityTally t;
  t.article_id = std::string(article_id);
  t.token_length = token_length(body);
  std::unordered_set<std::string> unique;
  for (const auto& m : mentions) {
    switch (m.kind) {
      case EntityKind::kPerson:
        ++t.person;
        break;
      case EntityKind::kGpe:
        ++t.gpe;
        break;
      case EntityKind::kOrg:
        ++t.org;
        break;
    }
    std::string key = normalize_surface(m.surface);
    if (!key.empty()) unique.insert(std::move(key));
  }
  t.unique_entities = unique.size();
  return t;
}

EntityTally tally(const corpus::Article& article, const std::vector<EntityMention>& mentions) {
  return tally(article.id, article.body, mentions);
}

FocusValue focus(const EntityTally& t) {
  if (t.token_length == 0) {
    fail(ErrorCode::kUndefinedFocus,
         "focus is undefined for article " + t.article_id + ": body has no tokens");
  }
  return {t.article_id,
          static_cast<double>(t.unique_entities) / static_cast<double>(t.token_length)};
}

}  // namespace cfp::entities
