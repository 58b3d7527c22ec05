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

#include <string_view>

// Default data files compiled into the library.
namespace cfp::resources {

std::string_view vader_lexicon();
std::string_view emoji_lexicon();
std::string_view boilerplate_patterns();
std::string_view flip_rules();
std::string_view gazetteer_gpe();
std::string_view gazetteer_org();
std::string_view person_cues();
std::string_view non_entity_words();

inline constexpr std::string_view kLexiconVersion = "vader_lexicon 3.3.2";

}  // namespace cfp::resources
