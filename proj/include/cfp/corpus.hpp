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
#include <istream>
#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "cfp/date.hpp"

namespace cfp::corpus {

enum class Origin { kReal, kGenerated };

std::string_view origin_name(Origin origin);
Origin parse_origin(std::string_view name);

struct Article {
  std::string id;
  std::string title;
  std::string description;
  std::optional<std::string> byline;
  Date published_at;
  std::optional<std::string> url;
  std::string body;
  Origin origin = Origin::kReal;
  std::optional<std::string> model_tag;
};

// Deterministic id: first 16 hex digits of SHA-256 over the normalized title
// and the first 200 code points of the normalized body.
std::string article_id(std::string_view title, std::string_view body);

// An immutable, deduplicated, ordered collection of articles.
class Corpus {
 public:
  Corpus() = default;
  // Drops later articles whose id repeats an earlier one.
  Corpus(std::vector<Article> articles, std::string label);

  const std::vector<Article>& articles() const { return articles_; }
  const std::string& label() const { return label_; }
  std::size_t size() const { return articles_.size(); }
  bool empty() const { return articles_.empty(); }
  // Earliest and latest publication dates; nullopt when empty.
  std::optional<std::pair<Date, Date>> span() const;
  std::size_t duplicates_dropped() const { return duplicates_dropped_; }

 private:
  std::vector<Article> articles_;
  std::string label_;
  std::size_t duplicates_dropped_ = 0;
};

// Boilerplate rules applied line-by-line before whitespace collapse.
class Cleaner {
 public:
  Cleaner();  // shipped defaults
  explicit Cleaner(std::string_view pattern_file_contents);
  static Cleaner from_file(const std::string& path);

  std::string clean(std::string_view raw_body) const;
  std::size_t pattern_count() const { return patterns_.size(); }

 private:
  std::vector<std::regex> patterns_;
};

std::string clean(std::string_view raw_body);

enum class Format { kKaggleCbcCsv, kJsonl };
Format parse_format(std::string_view name);

struct Reject {
  std::size_t row = 0;  // 1-based data row (CSV) or line (JSONL)
  std::string reason;
};

struct IngestSummary {
  std::size_t read = 0;
  std::size_t cleaned = 0;   // rows that parsed and survived cleaning
  std::size_t deduped = 0;   // cleaned rows dropped as duplicates
  std::size_t rejected = 0;
  std::size_t retained = 0;
};

struct IngestResult {
  Corpus corpus;
  IngestSummary summary;
  std::vector<Reject> rejects;
};

// Throws kSchema when the header lacks a required column; row-level problems
// land in the reject log.
IngestResult ingest(std::istream& source, Format format,
                    const Cleaner& cleaner, std::string label);
IngestResult ingest_file(const std::string& path, Format format,
                         const Cleaner& cleaner, std::string label = {});

// Canonical JSONL: one object per line with field order id, title,
// description, byline, published_at, url, body, origin, model_tag.
std::string to_json_line(const Article& article);
std::string serialize_jsonl(const Corpus& corpus);
std::string serialize_rejects(const std::vector<Reject>& rejects);
void write_jsonl(const Corpus& corpus, const std::string& path);

struct ArticlePair {
  const Article* real = nullptr;
  const Article* generated = nullptr;
};

struct PairingResult {
  std::vector<ArticlePair> pairs;
  std::vector<const Article*> unmatched_real;
  std::vector<const Article*> unmatched_generated;
};

// Pairs on exact (title, description). Throws kAmbiguity when either side
// repeats a key.
PairingResult pair(const Corpus& real, const Corpus& generated);

// Key-generic pairing used by `pair` and by the compare workflow, which pairs
// measure rows rather than whole articles. Returns index pairs.
struct IndexPairing {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> unmatched_a;
  std::vector<std::size_t> unmatched_b;
};
IndexPairing pair_by_metadata(
    const std::vector<std::pair<std::string, std::string>>& keys_a,
    const std::vector<std::pair<std::string, std::string>>& keys_b);

}  // namespace cfp::corpus
