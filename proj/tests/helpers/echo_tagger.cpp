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

// Test tagger speaking the exchange protocol: every token that starts with an
// upper-case ASCII letter is reported as a PERSON mention of one token.
// With --bad it answers with malformed JSON instead.

#include <cctype>
#include <cstring>
#include <iostream>
#include <sstream>
#include <string>

#include "json.hpp"

int main(int argc, char** argv) {
  const bool bad = argc > 1 && std::strcmp(argv[1], "--bad") == 0;
  std::string line;
  while (std::getline(std::cin, line)) {
    if (bad) {
      std::cout << "{not json" << std::endl;
      continue;
    }
    auto request = nlohmann::json::parse(line);
    std::istringstream words(request["text"].get<std::string>());
    nlohmann::ordered_json response;
    response["article_id"] = request["article_id"];
    response["mentions"] = nlohmann::json::array();
    std::string w;
    for (std::size_t i = 0; words >> w; ++i) {
      if (std::isupper(static_cast<unsigned char>(w[0]))) {
        response["mentions"].push_back({{"surface", w}, {"kind", "PERSON"}, {"start", i}, {"end", i + 1}});
      }
    }
    std::cout << response.dump() << std::endl;
  }
  return 0;
}
