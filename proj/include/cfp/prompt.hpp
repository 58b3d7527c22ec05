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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cfp::corpus {
struct Article;
}

namespace cfp::simulate {

struct FrameworkSnapshot;

enum class Strategy { kStandard, kStatic, kRolling };

std::string_view strategy_name(Strategy strategy);
Strategy parse_strategy(std::string_view name);
// "model1" / "model2" / "model3" for standard / static / rolling.
std::string_view strategy_model_name(Strategy strategy);

using Dictionary = std::vector<std::pair<std::string, std::string>>;

struct PromptRecord {
  std::string article_id;
  Strategy strategy = Strategy::kStandard;
  Dictionary dictionary;  // title, description, [framework], text
  std::string serialized;
};

// Backslash-escapes \, ', and control characters (\n, \r, \t).
std::string escape_value(std::string_view value);
std::string unescape_value(std::string_view value);

// "{'k1': 'v1', 'k2': 'v2'}". With open_last, the final value is left open
// after its opening quote: "... 'text': '".
std::string serialize_dictionary(const Dictionary& dictionary, bool open_last = false);
// Inverse of serialize_dictionary(d, false). Throws kParse.
Dictionary parse_dictionary(std::string_view text);

// Builds the completion prompt. Rolling prompts require a framework snapshot
// captured within window_days of the article date.
PromptRecord build_prompt(const corpus::Article& article, Strategy strategy,
                          const FrameworkSnapshot* framework, int window_days = 31);

// Training-record form with the text key filled in.
std::string training_record(const corpus::Article& article,
                            const FrameworkSnapshot* framework = nullptr);

}  // namespace cfp::simulate
