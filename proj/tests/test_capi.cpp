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

#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "cfp/cfp.h"
#include "doctest.h"
#include "support.hpp"

using cfp::testing::TempDir;

namespace {

int run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(CFP_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("c api") {
  TEST_CASE("analyzer") {
    cfp_analyzer* a = nullptr;
    REQUIRE(cfp_analyzer_new(nullptr, nullptr, &a) == CFP_OK);
    double c = 0;
    REQUIRE(cfp_analyzer_score_sentence(
                a, "Transportation Minister Clare Trevena said the incident is 'obviously' worrisome.", 1,
                &c) == CFP_OK);
    CHECK(c == -0.4019);
    size_t n = 0;
    REQUIRE(cfp_analyzer_score_text(a, "Good. Bad.", &c, &n) == CFP_OK);
    CHECK(n == 2);
    CHECK(cfp_analyzer_score_sentence(a, nullptr, 1, &c) == CFP_ERR_INVALID_ARGUMENT);
    CHECK(std::string(cfp_last_error()).find("sentence") != std::string::npos);
    cfp_analyzer_free(a);
    CHECK(cfp_analyzer_new("/nonexistent/lexicon.txt", nullptr, &a) == CFP_ERR_IO);
  }

  TEST_CASE("corpus handles") {
    cfp_corpus* c = nullptr;
    cfp_ingest_summary s{};
    REQUIRE(cfp_corpus_ingest_file(cfp::testing::data_path("fixture/real.csv").c_str(),
                                   CFP_FORMAT_KAGGLE_CBC_CSV, nullptr, &c, &s) == CFP_OK);
    CHECK(s.retained == 20);
    CHECK(cfp_corpus_size(c) == 20);
    char* id = nullptr;
    REQUIRE(cfp_corpus_article_id(c, 0, &id) == CFP_OK);
    CHECK(std::string(id).size() == 16);
    cfp_string_free(id);
    CHECK(cfp_corpus_article_id(c, 99, &id) == CFP_ERR_INVALID_ARGUMENT);
    cfp_corpus_free(c);
    char* cleaned = nullptr;
    REQUIRE(cfp_clean_text("Social Sharing\nText  here.", &cleaned) == CFP_OK);
    CHECK(std::string(cleaned) == "Text here.");
    cfp_string_free(cleaned);
  }

  TEST_CASE("tagger, focus, keyness and stats") {
    cfp_tagger* t = nullptr;
    REQUIRE(cfp_tagger_new("builtin", nullptr, &t) == CFP_OK);
    cfp_entity_tally tally{};
    double focus = 0;
    REQUIRE(cfp_tagger_tally(t, "a", "Dr. Theresa Tam visited Ottawa today.", &tally, &focus) == CFP_OK);
    CHECK(tally.person == 1);
    CHECK(tally.gpe == 1);
    CHECK(tally.token_length == 6);
    CHECK(focus == doctest::Approx(2.0 / 6.0));
    char* json = nullptr;
    REQUIRE(cfp_tagger_tag(t, "a", "Ottawa", &json) == CFP_OK);
    CHECK(std::string(json).find("\"gpe\"") != std::string::npos);
    cfp_string_free(json);
    cfp_tagger_free(t);
    CHECK(cfp_tagger_new("magic", nullptr, &t) == CFP_ERR_INVALID_ARGUMENT);
    CHECK(cfp_focus(0, 0, &focus) == CFP_ERR_UNDEFINED);

    double ll = 0;
    REQUIRE(cfp_keyness_log_likelihood(10, 0, 1000, 1000, &ll) == CFP_OK);
    CHECK(ll == doctest::Approx(13.8629436).epsilon(1e-9));
    CHECK(cfp_keyness_log_likelihood(0, 0, 10, 10, &ll) == CFP_ERR_ABSENT_WORD);

    const double a[] = {1, 2, 3};
    const double b[] = {3, 4, 5};
    double d = 0;
    REQUIRE(cfp_stats_cohen_d(a, 3, b, 3, &d) == CFP_OK);
    CHECK(d == doctest::Approx(-2.0));
    double o = 0;
    REQUIRE(cfp_stats_overlap(a, 3, a, 3, 100, &o) == CFP_OK);
    CHECK(o == doctest::Approx(1.0));
    double r = 0;
    CHECK(cfp_stats_pearson_r(a, a, 1, &r) == CFP_ERR_UNDEFINED);
  }

  TEST_CASE("prompt and options") {
    char* p = nullptr;
    REQUIRE(cfp_prompt_build("T", "D", "standard", nullptr, &p) == CFP_OK);
    CHECK(std::string(p) == "{'title': 'T', 'description': 'D', 'text': '");
    cfp_string_free(p);
    CHECK(cfp_prompt_build("T", "D", "rolling", nullptr, &p) == CFP_ERR_MISSING_FRAMEWORK);
    CHECK(cfp_option_known("measure", "vocab-filter") == 1);
    CHECK(cfp_option_known("measure", "endpoint") == 0);
    CHECK(cfp_exit_code(CFP_OK) == 0);
    CHECK(cfp_exit_code(CFP_ERR_SCHEMA) == 2);
    CHECK(cfp_exit_code(CFP_ERR_TAGGER) == 1);
    CHECK(std::string(cfp_version()) == "1.0.0");
  }

  TEST_CASE("command line exit codes") {
    TempDir dir;
    const std::string fixture = cfp::testing::data_path("fixture/real.csv");
    CHECK(run_cli("--version") == 0);
    CHECK(run_cli("") == 2);
    CHECK(run_cli("ingest --no-such-flag x") == 2);
    CHECK(run_cli("ingest --input " + dir / "missing.csv" + " --out " + dir / "o.jsonl") == 2);
    CHECK(run_cli("ingest --input " + fixture + " --out " + dir / "corpus.jsonl") == 0);
    CHECK(run_cli("measure --corpus " + dir / "corpus.jsonl" + " --out-dir " + dir / "m") == 0);
    CHECK(run_cli("generate --corpus " + dir / "corpus.jsonl" + " --out-dir " + dir / "g" +
                  " --retries 1", "CFP_ENDPOINT=http://127.0.0.1:9/v1/completions") == 1);

    {
      std::ofstream(dir / "cfp.toml") << "[measure]\nvocab_filter = \"vader\"\n";
    }
    CHECK(run_cli("--config " + dir / "cfp.toml" + " measure --corpus " + dir / "corpus.jsonl" +
                  " --out-dir " + dir / "mv") == 0);
    std::ifstream freq(dir / "mv/frequencies.json");
    std::string contents((std::istreambuf_iterator<char>(freq)), std::istreambuf_iterator<char>());
    CHECK(contents.find("\"filter\": \"vader\"") != std::string::npos);
    // Flags win over the config file.
    CHECK(run_cli("--config " + dir / "cfp.toml" + " measure --corpus " + dir / "corpus.jsonl" +
                  " --out-dir " + dir / "mn --vocab-filter none") == 0);
    {
      std::ofstream(dir / "bad.toml") << "[measure]\nno_such_key = 1\n";
    }
    CHECK(run_cli("--config " + dir / "bad.toml" + " measure --corpus " + dir / "corpus.jsonl" +
                  " --out-dir " + dir / "mb") == 2);
  }
}
