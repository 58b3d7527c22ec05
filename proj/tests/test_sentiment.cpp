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

#include <cmath>
#include <fstream>
#include <string>

#include "cfp/corpus.hpp"
#include "cfp/error.hpp"
#include "cfp/sentiment.hpp"
#include "cfp/text.hpp"
#include "doctest.h"
#include "support.hpp"

using cfp::sentiment::Analyzer;

TEST_SUITE("sentiment") {
  TEST_CASE("table sentences score as published") {
    const Analyzer analyzer;
    CHECK(analyzer.score_sentence(
                      "Thousands of cyclists pedalled along empty Toronto highways today, enjoying "
                      "the good weather and raising money for charity.")
              .compound == 0.8074);
    CHECK(analyzer.score_sentence("'They're good at running them and we have to create the right "
                                  "environment for them,' she said.")
              .compound == 0.6124);
    CHECK(analyzer.score_sentence("She said it's not good enough to say there's a strategy — "
                                  "that the province needs a strategy in action.")
              .compound == -0.3412);
    CHECK(analyzer.score_sentence(
                      "Transportation Minister Clare Trevena said the incident is 'obviously' "
                      "worrisome.")
              .compound == -0.4019);
  }

  TEST_CASE("fixture matches the reference implementation") {
    const Analyzer analyzer;
    std::ifstream in(cfp::testing::data_path("vader_fixture.tsv"));
    REQUIRE(in);
    std::string line;
    int n = 0;
    int mismatches = 0;
    while (std::getline(in, line)) {
      const auto tab = line.rfind('\t');
      REQUIRE(tab != std::string::npos);
      const std::string sentence = line.substr(0, tab);
      const double expected = std::stod(line.substr(tab + 1));
      const double got = analyzer.score_sentence(sentence, false).compound;
      if (std::fabs(got - expected) > 0.0005) {
        ++mismatches;
        MESSAGE(sentence << " expected " << expected << " got " << got);
      }
      ++n;
    }
    CHECK(n == 200);
    CHECK(mismatches == 0);
  }

  TEST_CASE("compound is bounded and neutral text scores zero") {
    const Analyzer analyzer;
    CHECK(analyzer.score_sentence("The council met on Tuesday.").compound == 0.0);
    CHECK(analyzer.score_sentence("").compound == 0.0);
    const double high = analyzer.score_sentence("GREAT GREAT GREAT wonderful amazing love!!!!").compound;
    CHECK(high <= 1.0);
    CHECK(high > 0.9);
  }

  TEST_CASE("negation and but clauses") {
    const Analyzer analyzer;
    CHECK(analyzer.score_sentence("The food was good.").compound > 0);
    CHECK(analyzer.score_sentence("The food was not good.").compound < 0);
    const double plain = analyzer.score_sentence("The food was good, and the service was slow.").compound;
    const double but = analyzer.score_sentence("The food was good, but the service was awful.").compound;
    CHECK(but < plain);
  }

  TEST_CASE("flip rules invert medical test outcomes") {
    const Analyzer analyzer;
    const auto flipped = analyzer.score_sentence("She tested positive for the virus.", true);
    const auto plain = analyzer.score_sentence("She tested positive for the virus.", false);
    CHECK(plain.compound > 0);
    CHECK(flipped.compound < 0);
    REQUIRE(flipped.flipped_terms.size() == 1);
    CHECK(flipped.flipped_terms[0].token == "positive");
    CHECK(plain.flipped_terms.empty());
    // Outside the window the trigger has no effect.
    const auto far = analyzer.score_sentence("The test came back today and she felt positive.", true);
    CHECK(far.flipped_terms.empty());
  }

  TEST_CASE("flip rules parse and reject bad input") {
    auto rules = cfp::sentiment::parse_flip_rules(
        R"([{"target": "negative", "triggers": ["covid"], "window": 3}])");
    REQUIRE(rules.size() == 1);
    CHECK(rules[0].window == 3);
    CHECK(rules[0].triggers.count("covid") == 1);
    CHECK_THROWS_AS(cfp::sentiment::parse_flip_rules("{"), cfp::Error);
    CHECK_THROWS_AS(cfp::sentiment::parse_flip_rules(R"([{"target": ""}])"), cfp::Error);
  }

  TEST_CASE("article mean over sentences") {
    const Analyzer analyzer;
    const auto s = analyzer.score_text("a1", "The day was great. The night was terrible. Nothing happened.");
    REQUIRE(s.n_sentences == 3);
    double sum = 0;
    for (const auto& sc : s.sentence_scores) sum += sc.compound;
    CHECK(s.mean_compound == doctest::Approx(sum / 3));
    const auto skipped =
        analyzer.score_text("a1", "The day was great. The night was terrible. Nothing happened.", true);
    CHECK(skipped.n_sentences == 3);
    CHECK(skipped.mean_compound ==
          doctest::Approx((s.sentence_scores[0].compound + s.sentence_scores[1].compound) / 2));
    const auto empty = analyzer.score_text("a2", "   ");
    CHECK(empty.empty);
    CHECK(empty.mean_compound == 0.0);
  }

  TEST_CASE("sentence splitting") {
    using cfp::sentiment::split_sentences;
    auto s = split_sentences("Dr. Tam spoke on Monday. She said cases rose in the U.S. last week! Really?");
    REQUIRE(s.size() == 3);
    CHECK(s[0] == "Dr. Tam spoke on Monday.");
    CHECK(s[1] == "She said cases rose in the U.S. last week!");
    CHECK(s[2] == "Really?");
    auto q = split_sentences("\"It is over,\" he said. \"We won.\" Then he left.");
    REQUIRE(q.size() == 3);
    CHECK(q[1] == "\"We won.\"");
    CHECK(split_sentences("").empty());
    CHECK(split_sentences("No terminal punctuation").size() == 1);
    CHECK(split_sentences("Prices rose 3.5 per cent.").size() == 1);
  }

  TEST_CASE("sentences partition the collapsed body") {
    const std::string body =
        "  First one.  Second   one!\nThird one? Mr. Smith went to Washington. He met J. Doe at 5 p.m. "
        "yesterday.   ";
    const auto s = cfp::sentiment::split_sentences(body);
    CHECK(cfp::text::join(s, " ") == cfp::text::collapse_whitespace(body));
  }

  TEST_CASE("lexicon parsing") {
    auto lex = cfp::sentiment::Lexicon::parse("good\t1.9\t0.9\t[2]\nbad\t-2.5\t0.5\t[-2]\n", "test");
    CHECK(lex.size() == 2);
    REQUIRE(lex.find("good") != nullptr);
    CHECK(*lex.find("good") == 1.9);
    CHECK(lex.find("Good") == nullptr);
    CHECK_THROWS_AS(cfp::sentiment::Lexicon::parse("", "empty"), cfp::Error);
    CHECK(cfp::sentiment::Lexicon::builtin().size() > 7000);
  }
}
