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

#include "cfp/prompt.hpp"

#include <cstdint>

#include "cfp/corpus.hpp"
#include "cfp/error.hpp"
#include "cfp/text.hpp"
#include "cfp/wayback.hpp"

namespace cfp::simulate {

std::string_view strategy_name(Strategy strategy) {
  switch (strategy) {
    case Strategy::kStandard:
      return "standard";
    case Strategy::kStatic:
      return "static";
    case Strategy::kRolling:
      return "rolling";
  }
  return "standard";
}

Strategy parse_strategy(std::string_view name) {
  const std::string lower = text::to_lower(name);
  if (lower == "standard" || lower == "model1") return Strategy::kStandard;
  if (lower == "static" || lower == "model2") return Strategy::kStatic;
  if (lower == "rolling" || lower == "model3") return Strategy::kRolling;
  fail(ErrorCode::kInvalidArgument,
       "unknown strategy '" + std::string(name) + "' (expected standard, static or rolling)");
}

std::string_view strategy_model_name(Strategy strategy) {
  switch (strategy) {
    case Strategy::kStandard:
      return "model1";
    case Strategy::kStatic:
      return "model2";
    case Strategy::kRolling:
      return "model3";
  }
  return "model1";
}

std::string escape_value(std::string_view value) {
  std::string out;
  out.reserve(value.size() + 8);
  for (char c : value) {
    switch (c) {
      case '\\':
        out += "\\\\";
        break;
      case '\'':
        out += "\\'";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

std::string unescape_value(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    const char c = value[i];
    if (c != '\\' || i + 1 == value.size()) {
      out.push_back(c);
      continue;
    }
    const char next = value[++i];
    switch (next) {
      case '\\':
        out.push_back('\\');
        break;
      case '\'':
        out.push_back('\'');
        break;
      case 'n':
        out.push_back('\n');
        break;
      case 'r':
        out.push_back('\r');
        break;
      case 't':
        out.push_back('\t');
        break;
      default:
        out.push_back('\\');
        out.push_back(next);
    }
  }
  return out;
}

std::string serialize_dictionary(const Dictionary& dictionary, bool open_last) {
  std::string out = "{";
  for (std::size_t i = 0; i < dictionary.size(); ++i) {
    const auto& [key, value] = dictionary[i];
    if (i > 0) out += ", ";
    out += "'" + escape_value(key) + "': '";
    if (open_last && i + 1 == dictionary.size()) return out;
    out += escape_value(value) + "'";
  }
  return out + "}";
}

Dictionary parse_dictionary(std::string_view s) {
  Dictionary out;
  std::size_t i = 0;
  auto error = [&](const std::string& what) {
    fail(ErrorCode::kParse, "dictionary parse error at offset " + std::to_string(i) + ": " + what);
  };
  auto skip_space = [&] {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\n' || s[i] == '\t' || s[i] == '\r')) ++i;
  };
  auto quoted = [&]() -> std::string {
    if (i >= s.size() || s[i] != '\'') error("expected a quote");
    const std::size_t begin = ++i;
    while (i < s.size() && s[i] != '\'') {
      if (s[i] == '\\') ++i;
      ++i;
    }
    if (i >= s.size()) error("unterminated string");
    return unescape_value(s.substr(begin, i++ - begin));
  };
  skip_space();
  if (i >= s.size() || s[i] != '{') error("expected '{'");
  ++i;
  skip_space();
  if (i < s.size() && s[i] == '}') return out;
  for (;;) {
    skip_space();
    std::string key = quoted();
    skip_space();
    if (i >= s.size() || s[i] != ':') error("expected ':'");
    ++i;
    skip_space();
    out.emplace_back(std::move(key), quoted());
    skip_space();
    if (i < s.size() && s[i] == ',') {
      ++i;
      continue;
    }
    if (i < s.size() && s[i] == '}') {
      ++i;
      break;
    }
    error("expected ',' or '}'");
  }
  skip_space();
  if (i != s.size()) error("trailing characters");
  return out;
}

namespace {

Dictionary metadata(const corpus::Article& article, const FrameworkSnapshot* framework) {
  if (text::trim(article.title).empty()) {
    fail(ErrorCode::kPrompt, "article " + article.id + " has no title");
  }
  if (text::trim(article.description).empty()) {
    fail(ErrorCode::kPrompt, "article " + article.id + " has no description");
  }
  Dictionary d = {{"title", article.title}, {"description", article.description}};
  if (framework) d.emplace_back("framework", framework->description);
  return d;
}

}  // namespace

PromptRecord build_prompt(const corpus::Article& article, Strategy strategy,
                          const FrameworkSnapshot* framework, int window_days) {
  if (strategy == Strategy::kStandard) {
    framework = nullptr;
  } else if (!framework) {
    fail(ErrorCode::kMissingFramework, std::string(strategy_name(strategy)) +
                                           " prompts need a framework description (article " +
                                           article.id + ")");
  } else if (strategy == Strategy::kRolling) {
    std::int64_t gap = framework->snapshot_date().days_since_epoch() -
                       article.published_at.days_since_epoch();
    if (gap < 0) gap = -gap;
    if (gap > window_days) {
      fail(ErrorCode::kMissingFramework,
           "framework snapshot " + framework->snapshot_date().iso() + " is " + std::to_string(gap) +
               " days from article " + article.id + " (" + article.published_at.iso() +
               "); window is " + std::to_string(window_days) + " days");
    }
  }
  if (framework && text::trim(framework->description).empty()) {
    fail(ErrorCode::kMissingFramework, "framework description is empty");
  }
  PromptRecord record;
  record.article_id = article.id;
  record.strategy = strategy;
  record.dictionary = metadata(article, framework);
  record.dictionary.emplace_back("text", "");
  record.serialized = serialize_dictionary(record.dictionary, true);
  return record;
}

std::string training_record(const corpus::Article& article, const FrameworkSnapshot* framework) {
  Dictionary d = metadata(article, framework);
  d.emplace_back("text", article.body);
  return serialize_dictionary(d, false);
}

}  // namespace cfp::simulate
