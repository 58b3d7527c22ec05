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

#include "cfp/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include "json.hpp"
#include <sstream>
#include <unordered_set>

#include "cfp/error.hpp"
#include "cfp/resources.hpp"
#include "cfp/text.hpp"
#include "csv.hpp"

namespace cfp::corpus {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::size_t kIdBodyPrefix = 200;

std::string normalize_for_id(std::string_view s) {
  return text::to_lower(text::collapse_whitespace(s));
}

std::string prefix_code_points(std::string_view s, std::size_t n) {
  std::size_t i = 0;
  for (std::size_t k = 0; k < n && i < s.size(); ++k) text::next_code_point(s, i);
  return std::string(s.substr(0, i));
}

std::vector<std::regex> compile_patterns(std::string_view contents) {
  std::vector<std::regex> patterns;
  std::size_t line_no = 0;
  for (const auto& raw : text::split(contents, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty() || text::trim(line).front() == '#') continue;
    try {
      patterns.emplace_back(std::string(line), std::regex::ECMAScript | std::regex::optimize);
    } catch (const std::regex_error& e) {
      fail(ErrorCode::kInvalidArgument, "boilerplate pattern on line " + std::to_string(line_no) +
                                            " does not compile: " + e.what());
    }
  }
  return patterns;
}

// "['Cbc News', 'Jane Doe']" -> "Cbc News, Jane Doe"
std::optional<std::string> normalize_byline(std::string_view raw) {
  std::string_view s = text::trim(raw);
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') {
    s = s.substr(1, s.size() - 2);
    std::vector<std::string> names;
    for (auto& part : text::split(s, ',')) {
      std::string_view p = text::trim(part);
      if (p.size() >= 2 && (p.front() == '\'' || p.front() == '"') && p.back() == p.front()) {
        p = p.substr(1, p.size() - 2);
      }
      p = text::trim(p);
      if (!p.empty()) names.emplace_back(p);
    }
    if (names.empty()) return std::nullopt;
    return text::join(names, ", ");
  }
  if (s.empty()) return std::nullopt;
  return std::string(s);
}

std::optional<std::string> optional_text(std::string_view raw) {
  std::string_view s = text::trim(raw);
  if (s.empty()) return std::nullopt;
  return std::string(s);
}

struct RowOutcome {
  std::optional<Article> article;
  std::string reject_reason;
};

RowOutcome finish_article(Article article, std::string_view raw_date, const Cleaner& cleaner) {
  RowOutcome out;
  for (const std::string* field : {&article.title, &article.description, &article.body}) {
    if (!text::is_valid_utf8(*field)) {
      out.reject_reason = "invalid UTF-8";
      return out;
    }
  }
  auto date = Date::parse(raw_date);
  if (!date) {
    out.reject_reason = "unparseable date '" + std::string(raw_date) + "'";
    return out;
  }
  article.published_at = *date;
  article.title = text::collapse_whitespace(article.title);
  article.description = text::collapse_whitespace(article.description);
  if (article.title.empty()) {
    out.reject_reason = "empty title";
    return out;
  }
  article.body = cleaner.clean(article.body);
  if (article.body.empty()) {
    out.reject_reason = "empty body after cleaning";
    return out;
  }
  article.id = article_id(article.title, article.body);
  out.article = std::move(article);
  return out;
}

struct Accumulator {
  IngestResult result;
  std::vector<Article> articles;
  std::unordered_set<std::string> seen;

  void accept(RowOutcome outcome, std::size_t row) {
    ++result.summary.read;
    if (!outcome.article) {
      ++result.summary.rejected;
      result.rejects.push_back({row, std::move(outcome.reject_reason)});
      return;
    }
    ++result.summary.cleaned;
    if (!seen.insert(outcome.article->id).second) {
      ++result.summary.deduped;
      return;
    }
    articles.push_back(std::move(*outcome.article));
  }
  void reject(std::size_t row, std::string reason) {
    ++result.summary.read;
    ++result.summary.rejected;
    result.rejects.push_back({row, std::move(reason)});
  }
};

std::string lower_trimmed(std::string_view s) { return text::to_lower(text::trim(s)); }

void ingest_csv(std::string_view data, const Cleaner& cleaner, Accumulator& acc) {
  auto records = csv::parse(data);
  if (records.empty()) {
    fail(ErrorCode::kSchema, "CSV input has no header row");
  }
  const auto& header = records.front().fields;
  std::map<std::string, std::size_t> columns;
  for (std::size_t i = 0; i < header.size(); ++i) columns.emplace(lower_trimmed(header[i]), i);
  auto column = [&](const char* name, bool required) -> std::optional<std::size_t> {
    auto it = columns.find(name);
    if (it == columns.end()) {
      if (required) {
        fail(ErrorCode::kSchema, std::string("CSV header is missing required column '") + name + "'");
      }
      return std::nullopt;
    }
    return it->second;
  };
  const std::size_t c_title = *column("title", true);
  const std::size_t c_description = *column("description", true);
  const std::size_t c_date = *column("publish_date", true);
  const std::size_t c_text = *column("text", true);
  const auto c_authors = column("authors", false);
  const auto c_url = column("url", false);

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.unterminated) {
      acc.reject(r, "unterminated quoted field starting on line " + std::to_string(rec.line));
      continue;
    }
    if (rec.fields.size() != header.size()) {
      acc.reject(r, "expected " + std::to_string(header.size()) + " fields, found " +
                        std::to_string(rec.fields.size()));
      continue;
    }
    Article a;
    a.title = rec.fields[c_title];
    a.description = rec.fields[c_description];
    a.body = rec.fields[c_text];
    if (c_authors) a.byline = normalize_byline(rec.fields[*c_authors]);
    if (c_url) a.url = optional_text(rec.fields[*c_url]);
    a.origin = Origin::kReal;
    acc.accept(finish_article(std::move(a), rec.fields[c_date], cleaner), r);
  }
}

std::optional<std::string> json_optional_string(const nlohmann::json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) fail(ErrorCode::kParse, std::string("field '") + key + "' is not a string");
  return it->get<std::string>();
}

std::string json_required_string(const nlohmann::json& obj, const char* key) {
  auto v = json_optional_string(obj, key);
  if (!v) fail(ErrorCode::kParse, std::string("missing field '") + key + "'");
  return *v;
}

void ingest_jsonl(std::string_view data, const Cleaner& cleaner, Accumulator& acc) {
  std::size_t line_no = 0;
  for (const auto& raw : text::split(data, '\n')) {
    ++line_no;
    std::string_view line = text::trim(raw);
    if (line.empty()) continue;
    try {
      if (!text::is_valid_utf8(line)) fail(ErrorCode::kParse, "invalid UTF-8");
      auto obj = nlohmann::json::parse(line);
      if (!obj.is_object()) fail(ErrorCode::kParse, "line is not a JSON object");
      Article a;
      a.title = json_required_string(obj, "title");
      a.description = json_optional_string(obj, "description").value_or("");
      a.body = json_required_string(obj, "body");
      a.byline = json_optional_string(obj, "byline");
      a.url = json_optional_string(obj, "url");
      a.model_tag = json_optional_string(obj, "model_tag");
      if (auto origin = json_optional_string(obj, "origin")) a.origin = parse_origin(*origin);
      std::string date = json_required_string(obj, "published_at");
      acc.accept(finish_article(std::move(a), date, cleaner), line_no);
    } catch (const nlohmann::json::exception& e) {
      acc.reject(line_no, std::string("malformed JSON: ") + e.what());
    } catch (const Error& e) {
      acc.reject(line_no, e.what());
    }
  }
}

}  // namespace

std::string_view origin_name(Origin origin) {
  return origin == Origin::kReal ? "real" : "generated";
}

Origin parse_origin(std::string_view name) {
  if (name == "real") return Origin::kReal;
  if (name == "generated") return Origin::kGenerated;
  fail(ErrorCode::kParse, "unknown origin '" + std::string(name) + "'");
}

std::string article_id(std::string_view title, std::string_view body) {
  std::string key = normalize_for_id(title);
  key.push_back('\x1f');
  key += prefix_code_points(normalize_for_id(body), kIdBodyPrefix);
  return text::sha256_hex(key).substr(0, 16);
}

Corpus::Corpus(std::vector<Article> articles, std::string label) : label_(std::move(label)) {
  std::unordered_set<std::string> seen;
  articles_.reserve(articles.size());
  for (auto& a : articles) {
    if (seen.insert(a.id).second) {
      articles_.push_back(std::move(a));
    } else {
      ++duplicates_dropped_;
    }
  }
}

std::optional<std::pair<Date, Date>> Corpus::span() const {
  if (articles_.empty()) return std::nullopt;
  auto [lo, hi] = std::minmax_element(
      articles_.begin(), articles_.end(),
      [](const Article& x, const Article& y) { return x.published_at < y.published_at; });
  return std::make_pair(lo->published_at, hi->published_at);
}

Cleaner::Cleaner() : patterns_(compile_patterns(resources::boilerplate_patterns())) {}

Cleaner::Cleaner(std::string_view pattern_file_contents)
    : patterns_(compile_patterns(pattern_file_contents)) {}

Cleaner Cleaner::from_file(const std::string& path) { return Cleaner(text::read_file(path)); }

std::string Cleaner::clean(std::string_view raw_body) const {
  if (patterns_.empty()) return text::collapse_whitespace(raw_body);
  std::string kept;
  kept.reserve(raw_body.size());
  for (auto& line : text::split(raw_body, '\n')) {
    std::string current = std::move(line);
    for (const auto& pattern : patterns_) {
      if (std::regex_search(current, pattern)) current = std::regex_replace(current, pattern, "");
    }
    if (text::strip_unicode_space(current).empty()) continue;
    kept += current;
    kept.push_back('\n');
  }
  return text::collapse_whitespace(kept);
}

std::string clean(std::string_view raw_body) {
  static const Cleaner cleaner;
  return cleaner.clean(raw_body);
}

Format parse_format(std::string_view name) {
  if (name == "kaggle-cbc" || name == "kaggle_cbc_csv" || name == "csv") return Format::kKaggleCbcCsv;
  if (name == "jsonl") return Format::kJsonl;
  fail(ErrorCode::kInvalidArgument,
       "unknown format '" + std::string(name) + "' (expected kaggle-cbc or jsonl)");
}

IngestResult ingest(std::istream& source, Format format, const Cleaner& cleaner,
                    std::string label) {
  std::ostringstream ss;
  ss << source.rdbuf();
  std::string data = ss.str();
  Accumulator acc;
  if (format == Format::kKaggleCbcCsv) {
    ingest_csv(data, cleaner, acc);
  } else {
    ingest_jsonl(data, cleaner, acc);
  }
  acc.result.summary.retained = acc.articles.size();
  acc.result.corpus = Corpus(std::move(acc.articles), std::move(label));
  return std::move(acc.result);
}

IngestResult ingest_file(const std::string& path, Format format, const Cleaner& cleaner,
                         std::string label) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open input '" + path + "'");
  if (label.empty()) label = std::filesystem::path(path).stem().string();
  return ingest(in, format, cleaner, std::move(label));
}

std::string to_json_line(const Article& a) {
  ordered_json j;
  j["id"] = a.id;
  j["title"] = a.title;
  j["description"] = a.description;
  j["byline"] = a.byline ? ordered_json(*a.byline) : ordered_json(nullptr);
  j["published_at"] = a.published_at.iso();
  j["url"] = a.url ? ordered_json(*a.url) : ordered_json(nullptr);
  j["body"] = a.body;
  j["origin"] = origin_name(a.origin);
  j["model_tag"] = a.model_tag ? ordered_json(*a.model_tag) : ordered_json(nullptr);
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

std::string serialize_jsonl(const Corpus& corpus) {
  std::string out;
  for (const auto& a : corpus.articles()) {
    out += to_json_line(a);
    out.push_back('\n');
  }
  return out;
}

std::string serialize_rejects(const std::vector<Reject>& rejects) {
  std::string out;
  for (const auto& r : rejects) {
    ordered_json j;
    j["row"] = r.row;
    j["reason"] = r.reason;
    out += j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    out.push_back('\n');
  }
  return out;
}

void write_jsonl(const Corpus& corpus, const std::string& path) {
  text::write_file_atomic(path, serialize_jsonl(corpus));
}

IndexPairing pair_by_metadata(const std::vector<std::pair<std::string, std::string>>& keys_a,
                              const std::vector<std::pair<std::string, std::string>>& keys_b) {
  auto index = [](const std::vector<std::pair<std::string, std::string>>& keys, const char* side) {
    std::map<std::pair<std::string, std::string>, std::size_t> idx;
    std::vector<std::string> collisions;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (!idx.emplace(keys[i], i).second) collisions.push_back(keys[i].first);
    }
    if (!collisions.empty()) {
      std::sort(collisions.begin(), collisions.end());
      collisions.erase(std::unique(collisions.begin(), collisions.end()), collisions.end());
      std::string msg = std::string("ambiguous pairing: ") + side +
                        " corpus repeats (title, description) for: ";
      for (std::size_t i = 0; i < collisions.size(); ++i) {
        if (i) msg += "; ";
        msg += "'" + collisions[i] + "'";
      }
      fail(ErrorCode::kAmbiguity, msg);
    }
    return idx;
  };
  auto idx_a = index(keys_a, "real");
  auto idx_b = index(keys_b, "generated");
  IndexPairing out;
  std::vector<bool> used_b(keys_b.size(), false);
  for (std::size_t i = 0; i < keys_a.size(); ++i) {
    auto it = idx_b.find(keys_a[i]);
    if (it == idx_b.end()) {
      out.unmatched_a.push_back(i);
    } else {
      out.pairs.emplace_back(i, it->second);
      used_b[it->second] = true;
    }
  }
  for (std::size_t j = 0; j < keys_b.size(); ++j) {
    if (!used_b[j]) out.unmatched_b.push_back(j);
  }
  return out;
}

PairingResult pair(const Corpus& real, const Corpus& generated) {
  auto keys = [](const Corpus& c) {
    std::vector<std::pair<std::string, std::string>> k;
    k.reserve(c.size());
    for (const auto& a : c.articles()) k.emplace_back(a.title, a.description);
    return k;
  };
  auto idx = pair_by_metadata(keys(real), keys(generated));
  PairingResult out;
  for (auto [i, j] : idx.pairs) {
    out.pairs.push_back({&real.articles()[i], &generated.articles()[j]});
  }
  for (auto i : idx.unmatched_a) out.unmatched_real.push_back(&real.articles()[i]);
  for (auto j : idx.unmatched_b) out.unmatched_generated.push_back(&generated.articles()[j]);
  return out;
}

}  // namespace cfp::corpus
