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

#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "cfp/entities.hpp"
#include "cfp/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cfp::entities;

namespace {

EntityMention mention(std::string surface, EntityKind kind, std::size_t start, std::size_t end) {
  return {std::move(surface), kind, start, end};
}

std::vector<std::string> surfaces(const std::vector<EntityMention>& ms, EntityKind kind) {
  std::vector<std::string> out;
  for (const auto& m : ms) {
    if (m.kind == kind) out.push_back(m.surface);
  }
  return out;
}

}  // namespace

TEST_SUITE("entities") {
  TEST_CASE("tally and focus on hand-labelled mentions") {
    const std::string body = "Dr. Theresa Tam said Health Canada will update Ontario residents.";
    const std::vector<EntityMention> ms = {
        mention("Theresa Tam", EntityKind::kPerson, 1, 3),
        mention("Health Canada", EntityKind::kOrg, 4, 6),
        mention("Ontario", EntityKind::kGpe, 8, 9),
    };
    const auto t = tally("a", body, ms);
    CHECK(t.person == 1);
    CHECK(t.gpe == 1);
    CHECK(t.org == 1);
    CHECK(t.unique_entities == 3);
    CHECK(t.token_length == 10);
    CHECK(focus(t).focus == 0.3);
  }

  TEST_CASE("repeated surfaces count once toward unique entities") {
    const std::string body = "Toronto officials met Toronto residents near TORONTO city hall.";
    const std::vector<EntityMention> ms = {
        mention("Toronto", EntityKind::kGpe, 0, 1),
        mention("Toronto", EntityKind::kGpe, 3, 4),
        mention("TORONTO", EntityKind::kGpe, 6, 7),
    };
    const auto t = tally("a", body, ms);
    CHECK(t.gpe == 3);
    CHECK(t.unique_entities == 1);
    CHECK(t.token_length == 9);
    CHECK(focus(t).focus == 1.0 / 9.0);
  }

  TEST_CASE("focus is undefined for an empty body") {
    const auto t = tally("a", "   ", {});
    CHECK(t.token_length == 0);
    CHECK_THROWS_AS(focus(t), cfp::Error);
  }

  TEST_CASE("focus stays in the unit interval for random layouts") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t n = 1 + rng() % 60;
      std::string body;
      for (std::size_t i = 0; i < n; ++i) body += "w" + std::to_string(rng() % 5) + " ";
      std::vector<EntityMention> ms;
      std::size_t pos = 0;
      while (pos < n) {
        const std::size_t len = 1 + rng() % 3;
        if (pos + len > n) break;
        if (rng() % 2) {
          ms.push_back(mention("E" + std::to_string(rng() % 8),
                               static_cast<EntityKind>(rng() % 3), pos, pos + len));
        }
        pos += len;
      }
      const auto t = tally("r", body, ms);
      const double f = focus(t).focus;
      REQUIRE(f >= 0.0);
      REQUIRE(f <= 1.0);
      REQUIRE(t.person + t.gpe + t.org == ms.size());
    }
  }

  TEST_CASE("normalized surfaces") {
    CHECK(normalize_surface("  Justin   TRUDEAU ") == "justin trudeau");
  }

  TEST_CASE("builtin tagger") {
    BuiltinTagger tagger;
    const auto ms = tagger.tag_text(
        "Dr. Theresa Tam said Health Canada will update Ontario residents on Monday.");
    CHECK(surfaces(ms, EntityKind::kPerson) == std::vector<std::string>{"Theresa Tam"});
    CHECK(surfaces(ms, EntityKind::kOrg) == std::vector<std::string>{"Health Canada"});
    CHECK(surfaces(ms, EntityKind::kGpe) == std::vector<std::string>{"Ontario"});

    const auto ms2 = tagger.tag_text(
        "Prime Minister Justin Trudeau spoke with the World Health Organization about the U.S. border.");
    CHECK(surfaces(ms2, EntityKind::kPerson) == std::vector<std::string>{"Justin Trudeau"});
    CHECK(surfaces(ms2, EntityKind::kOrg) == std::vector<std::string>{"World Health Organization"});
    CHECK(surfaces(ms2, EntityKind::kGpe) == std::vector<std::string>{"U.S."});

    const auto ms3 = tagger.tag_text("Mary Smith's shop in Toronto's east end reopened.");
    CHECK(surfaces(ms3, EntityKind::kPerson) == std::vector<std::string>{"Mary Smith"});
    CHECK(surfaces(ms3, EntityKind::kGpe) == std::vector<std::string>{"Toronto"});

    CHECK(tagger.tag_text("the quiet street was empty.").empty());
    for (const auto& m : ms2) {
      CHECK(m.start < m.end);
      CHECK(m.end <= token_length(
                         "Prime Minister Justin Trudeau spoke with the World Health Organization "
                         "about the U.S. border."));
    }
  }

  TEST_CASE("exchange format") {
    const std::vector<EntityMention> ms = {mention("Ottawa", EntityKind::kGpe, 0, 1)};
    const std::string line = exchange_response("id1", ms);
    auto [id, parsed] = parse_exchange_response(line, 3);
    CHECK(id == "id1");
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0].surface == "Ottawa");
    CHECK(parsed[0].kind == EntityKind::kGpe);
    CHECK_THROWS_AS(parse_exchange_response(line, 0), cfp::Error);
    CHECK_THROWS_AS(parse_exchange_response("{bad", 3), cfp::Error);
    auto [id2, dropped] = parse_exchange_response(
        R"({"article_id": "x", "mentions": [{"surface": "Monday", "kind": "DATE", "start": 0, "end": 1}]})", 2);
    CHECK(id2 == "x");
    CHECK(dropped.empty());
  }

  TEST_CASE("external process tagger") {
    ProcessExchangeTagger tagger(CFP_ECHO_TAGGER);
    const auto ms = tagger.tag("a1", "Anna met bob and Carl");
    REQUIRE(ms.size() == 2);
    CHECK(ms[0].surface == "Anna");
    CHECK(ms[1].start == 4);
    CHECK(tagger.tag("a2", "nobody here").empty());

    ProcessExchangeTagger bad(std::string(CFP_ECHO_TAGGER) + " --bad");
    CHECK_THROWS_AS(bad.tag("a1", "Anna"), cfp::Error);
    ProcessExchangeTagger missing("/nonexistent/tagger-binary");
    CHECK_THROWS_AS(missing.tag("a1", "Anna"), cfp::Error);
  }

  TEST_CASE("external file tagger") {
    cfp::testing::TempDir dir;
    {
      std::ofstream out(dir / "responses.jsonl");
      out << exchange_response("a1", {mention("Halifax", EntityKind::kGpe, 1, 2)}) << "\n";
    }
    FileExchangeTagger tagger(dir / "responses.jsonl");
    CHECK(tagger.tag("a1", "In Halifax today").size() == 1);
    CHECK_THROWS_AS(tagger.tag("zz", "text"), cfp::Error);
  }
}
