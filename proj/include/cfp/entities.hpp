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

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace cfp::corpus {
struct Article;
}

namespace cfp::entities {

enum class EntityKind { kPerson, kGpe, kOrg };
inline constexpr std::array<EntityKind, 3> kAllKinds = {
    EntityKind::kPerson, EntityKind::kGpe, EntityKind::kOrg};

std::string_view kind_name(EntityKind kind);
// Accepts person/gpe/org in any case; returns false for other labels
// (e.g. NORP, DATE) so callers can drop them.
bool parse_kind(std::string_view label, EntityKind& out);

struct EntityMention {
  std::string surface;
  EntityKind kind = EntityKind::kPerson;
  std::size_t start = 0;  // first whitespace-token index
  std::size_t end = 0;    // one past the last token
  bool operator==(const EntityMention&) const = default;
};

struct EntityTally {
  std::string article_id;
  std::size_t person = 0;
  std::size_t gpe = 0;
  std::size_t org = 0;
  std::size_t unique_entities = 0;
  std::size_t token_length = 0;

  std::size_t count(EntityKind kind) const;
  std::size_t total_mentions() const { return person + gpe + org; }
};

struct FocusValue {
  std::string article_id;
  double focus = 0.0;
};

class Tagger {
 public:
  virtual ~Tagger() = default;
  virtual std::vector<EntityMention> tag(std::string_view article_id,
                                         std::string_view text) = 0;
  virtual std::string name() const = 0;
};

struct Gazetteers {
  std::vector<std::string> gpe;
  std::vector<std::string> org;
  std::vector<std::string> person_cues;
  std::vector<std::string> non_entity;

  static Gazetteers builtin();
  // Each path may be empty to keep the shipped list for that category.
  static Gazetteers load(const std::string& gpe_path, const std::string& org_path,
                         const std::string& cues_path, const std::string& non_entity_path);
};

// Capitalization-driven rules over gazetteers. Pure and thread-safe.
class BuiltinTagger final : public Tagger {
 public:
  BuiltinTagger();
  explicit BuiltinTagger(const Gazetteers& gazetteers);

  std::vector<EntityMention> tag(std::string_view article_id,
                                 std::string_view text) override;
  std::vector<EntityMention> tag_text(std::string_view text) const;
  std::string name() const override { return "builtin"; }

 private:
  struct Phrases {
    std::unordered_set<std::string> set;
    std::size_t max_tokens = 1;
  };
  static Phrases make_phrases(const std::vector<std::string>& entries);
  std::size_t longest_match(const Phrases& phrases,
                            const std::vector<std::string>& keys,
                            std::size_t pos, std::size_t end) const;

  Phrases gpe_;
  Phrases org_;
  std::unordered_set<std::string> cues_;
  std::unordered_set<std::string> non_entity_;
};

// Exchange format, one JSON object per line:
//   request  {"article_id": ..., "text": ...}
//   response {"article_id": ..., "mentions": [{"surface", "kind", "start", "end"}]}
std::string exchange_request(std::string_view article_id, std::string_view text);
// Parses one response line; throws kTagger quoting the line when malformed or
// when a span falls outside [0, token_count].
std::pair<std::string, std::vector<EntityMention>> parse_exchange_response(
    std::string_view line, std::size_t token_count);
std::string exchange_response(std::string_view article_id,
                              const std::vector<EntityMention>& mentions);

// Reads precomputed responses from a file (the "file pair" mode).
class FileExchangeTagger final : public Tagger {
 public:
  explicit FileExchangeTagger(const std::string& response_path);
  std::vector<EntityMention> tag(std::string_view article_id,
                                 std::string_view text) override;
  std::string name() const override { return "external-file"; }

 private:
  std::unordered_map<std::string, std::vector<std::string>> lines_;
};

// Talks to a child process over stdin/stdout, one request in flight at a time.
class ProcessExchangeTagger final : public Tagger {
 public:
  explicit ProcessExchangeTagger(const std::string& command);
  ~ProcessExchangeTagger() override;
  ProcessExchangeTagger(const ProcessExchangeTagger&) = delete;
  ProcessExchangeTagger& operator=(const ProcessExchangeTagger&) = delete;

  std::vector<EntityMention> tag(std::string_view article_id,
                                 std::string_view text) override;
  std::string name() const override { return "external-process"; }

 private:
  std::string read_line();

  std::mutex mutex_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

std::size_t token_length(std::string_view body);

EntityTally tally(std::string_view article_id, std::string_view body,
                  const std::vector<EntityMention>& mentions);
EntityTally tally(const corpus::Article& article,
                  const std::vector<EntityMention>& mentions);

// e / l; throws kUndefinedFocus when token_length is zero.
FocusValue focus(const EntityTally& tally);

std::string normalize_surface(std::string_view surface);

}  // namespace cfp::entities
