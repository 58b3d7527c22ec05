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

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "cfp/cache.hpp"
#include "cfp/corpus.hpp"
#include "cfp/error.hpp"
#include "cfp/generation.hpp"
#include "cfp/http.hpp"
#include "cfp/prompt.hpp"
#include "cfp/text.hpp"
#include "cfp/wayback.hpp"
#include "doctest.h"
#include "stubs.hpp"
#include "support.hpp"

using namespace cfp::simulate;
using cfp::testing::CompletionStub;
using cfp::testing::TempDir;
using cfp::testing::WaybackStub;

namespace {

cfp::corpus::Corpus small_corpus(std::size_t n) {
  std::vector<cfp::corpus::Article> articles;
  for (std::size_t i = 0; i < n; ++i) {
    cfp::corpus::Article a;
    a.title = "Story " + std::to_string(i);
    a.description = "About story " + std::to_string(i);
    a.published_at = cfp::Date(2020, 3, 1 + static_cast<int>(i));
    a.body = "Real body " + std::to_string(i) + ".";
    a.id = cfp::corpus::article_id(a.title, a.body);
    articles.push_back(a);
  }
  return cfp::corpus::Corpus(std::move(articles), "real");
}

GenerationConfig config_for(const CompletionStub& stub, const std::string& cache) {
  GenerationConfig c;
  c.endpoint = stub.url();
  c.cache_dir = cache;
  c.retry.initial_backoff = std::chrono::milliseconds(1);
  return c;
}

std::size_t line_count(const std::string& path) {
  std::ifstream in(path);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) n += !line.empty();
  return n;
}

}  // namespace

TEST_SUITE("http") {
  TEST_CASE("url parsing and encoding") {
    const auto u = cfp::http::parse_url("https://example.org/a/b?x=1");
    CHECK(u.scheme == "https");
    CHECK(u.host == "example.org");
    CHECK(u.port == 443);
    CHECK(u.path_and_query == "/a/b?x=1");
    CHECK(cfp::http::parse_url("http://localhost:8080").path_and_query == "/");
    CHECK(cfp::http::parse_url("http://localhost:8080").port == 8080);
    CHECK_THROWS_AS(cfp::http::parse_url("ftp://x"), cfp::Error);
    CHECK(cfp::http::percent_encode("a b/c?d") == "a%20b%2Fc%3Fd");
  }

  TEST_CASE("retries with exponential backoff") {
    cfp::http::RetryPolicy policy;
    policy.attempts = 4;
    policy.initial_backoff = std::chrono::milliseconds(100);
    std::vector<long> sleeps;
    int calls = 0;
    auto r = cfp::http::with_retries(
        policy,
        [&] {
          ++calls;
          return cfp::http::Response{calls < 3 ? 503 : 200, "ok"};
        },
        [&](std::chrono::milliseconds d) { sleeps.push_back(d.count()); });
    CHECK(r.status == 200);
    CHECK(calls == 3);
    CHECK(sleeps == std::vector<long>{100, 200});

    calls = 0;
    CHECK(cfp::http::with_retries(policy, [&] { ++calls; return cfp::http::Response{404, ""}; },
                                  [](auto) {}).status == 404);
    CHECK(calls == 1);
    CHECK_THROWS_AS(cfp::http::with_retries(policy, [] { return cfp::http::Response{429, ""}; },
                                            [](auto) {}),
                    cfp::Error);
  }

  TEST_CASE("live client against a local server") {
    cfp::testing::StubServer stub;
    stub.server().Get("/hello", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("hi", "text/plain");
    });
    stub.start();
    cfp::http::LiveClient client;
    const auto r = client.get(stub.url("/hello"));
    CHECK(r.status == 200);
    CHECK(r.body == "hi");
    CHECK(client.get(stub.url("/missing")).status == 404);
    stub.stop();
    CHECK_THROWS_AS(client.get(stub.url("/hello")), cfp::Error);
  }
}

TEST_SUITE("cache") {
  TEST_CASE("content-addressed store") {
    TempDir dir;
    cfp::FileCache cache(dir.str(), "ns");
    CHECK_FALSE(cache.load("abcdef").has_value());
    cache.store("abcdef", "{\"v\": 1}");
    CHECK(cache.load("abcdef").value() == "{\"v\": 1}");
    CHECK(cache.path_for("abcdef") == dir.str() + "/ns/ab/abcdef.json");
    cfp::FileCache off;
    CHECK_FALSE(off.enabled());
    CHECK_FALSE(off.load("abcdef").has_value());
  }
}

TEST_SUITE("generation") {
  TEST_CASE("request body and completion parsing") {
    GenerationConfig c;
    c.endpoint = "http://localhost";
    const auto j = nlohmann::json::parse(completion_request_json(c, "P"));
    CHECK(j["prompt"] == "P");
    CHECK(j["temperature"].get<double>() == 0.5);
    CHECK(j["max_tokens"] == 750);
    CHECK_FALSE(j.contains("model"));
    c.model = "gpt2-medium";
    CHECK(nlohmann::json::parse(completion_request_json(c, "P"))["model"] == "gpt2-medium");
    CHECK(completion_text(R"({"choices": [{"text": "abc"}]})") == "abc");
    CHECK_THROWS_AS(completion_text(R"({"choices": []})"), cfp::Error);
    CHECK_THROWS_AS(completion_text("nope"), cfp::Error);
  }

  TEST_CASE("body extraction") {
    const std::string prompt = "{'title': 'T', 'description': 'D', 'text': '";
    CHECK(extract_body("Hello world.'} {'title': 'x'", prompt) == "Hello world.");
    CHECK(extract_body(prompt + "Echoed prompt.'}", prompt) == "Echoed prompt.");
    CHECK(extract_body("It\\'s fine.'}", prompt) == "It's fine.");
    CHECK(extract_body("No delimiter at all", prompt) == "No delimiter at all");
  }

  TEST_CASE("config validation and tags") {
    GenerationConfig c;
    c.temperature = 0;
    CHECK_THROWS_AS(validate(c), cfp::Error);
    c.temperature = 0.5;
    c.max_tokens = 0;
    CHECK_THROWS_AS(validate(c), cfp::Error);
    CHECK(model_tag(Strategy::kRolling, 0.5) == "model3-t0.50");
    CHECK(model_tag(Strategy::kStandard, 0.1) == "model1-t0.10");
  }

  TEST_CASE("generate against the stub") {
    CompletionStub stub;
    TempDir dir;
    cfp::http::LiveClient client;
    Generator gen(config_for(stub, dir / "cache"), client);
    const auto corpus = small_corpus(1);
    const auto& source = corpus.articles()[0];
    const auto prompt = build_prompt(source, Strategy::kStandard, nullptr);
    const auto a = gen.generate_article(prompt, source, "model1-t0.50");
    CHECK(a.body == "Officials said Story 0 was good news for Toronto residents. Dr. Jane Smith agreed.");
    CHECK(a.title == source.title);
    CHECK(a.description == source.description);
    CHECK(a.published_at == source.published_at);
    CHECK(a.origin == cfp::corpus::Origin::kGenerated);
    CHECK(a.model_tag.value_or("") == "model1-t0.50");
    REQUIRE(stub.request_count() == 1);
    const auto req = stub.requests()[0];
    CHECK(req["temperature"].get<double>() == 0.5);
    CHECK(req["max_tokens"] == 750);
    CHECK(req["prompt"] == prompt.serialized);
    CHECK(gen.cached(prompt));
    const auto again = gen.generate_article(prompt, source, "model1-t0.50");
    CHECK(again.body == a.body);
    CHECK(stub.request_count() == 1);
    CHECK(gen.cache_hits() == 1);
  }

  TEST_CASE("transient failures are retried") {
    CompletionStub stub;
    stub.fail_next(2);
    TempDir dir;
    cfp::http::LiveClient client;
    Generator gen(config_for(stub, ""), client);
    const auto corpus = small_corpus(1);
    const auto prompt = build_prompt(corpus.articles()[0], Strategy::kStandard, nullptr);
    CHECK_NOTHROW(gen.generate_article(prompt, corpus.articles()[0], "t"));
    CHECK(stub.request_count() == 3);
  }

  TEST_CASE("unreachable endpoint fails every article") {
    TempDir dir;
    GenerationConfig c;
    c.endpoint = "http://127.0.0.1:9/v1/completions";
    c.retry.attempts = 2;
    c.retry.initial_backoff = std::chrono::milliseconds(1);
    cfp::http::LiveClient client;
    RunOptions options;
    try {
      run_generation(small_corpus(2), c, options, client, nullptr);
      FAIL("expected failure");
    } catch (const cfp::Error& e) {
      CHECK(e.code() == cfp::ErrorCode::kGeneration);
    }
  }

  TEST_CASE("bounded concurrency, warm cache and resumption") {
    CompletionStub stub(std::chrono::milliseconds(30));
    TempDir dir;
    cfp::http::LiveClient client;
    auto config = config_for(stub, dir / "cache");
    config.max_in_flight = 3;
    RunOptions options;
    options.checkpoint_dir = dir.str();

    // A first run that only got through part of the corpus.
    const auto full = small_corpus(12);
    std::vector<cfp::corpus::Article> head(full.articles().begin(), full.articles().begin() + 8);
    run_generation(cfp::corpus::Corpus(head, "real"), config, options, client, nullptr);
    CHECK(stub.request_count() == 8);
    CHECK(line_count(dir / "checkpoint-model1-t0.50.jsonl") == 8);

    const auto resumed = run_generation(full, config, options, client, nullptr);
    CHECK(stub.request_count() == 12);
    REQUIRE(resumed.size() == 1);
    CHECK(resumed[0].network_calls == 4);
    CHECK(resumed[0].corpus.size() == 12);
    CHECK(stub.max_in_flight() <= 3);
    CHECK(stub.max_in_flight() >= 2);
    CHECK(line_count(dir / "checkpoint-model1-t0.50.jsonl") == 12);

    const auto warm = run_generation(full, config, options, client, nullptr);
    CHECK(stub.request_count() == 12);
    CHECK(warm[0].network_calls == 0);
    CHECK(cfp::corpus::serialize_jsonl(warm[0].corpus) ==
          cfp::corpus::serialize_jsonl(resumed[0].corpus));
  }

  TEST_CASE("temperature sweep yields one corpus per temperature") {
    CompletionStub stub;
    TempDir dir;
    cfp::http::LiveClient client;
    RunOptions options;
    options.temperatures = {0.1, 0.5, 1.0};
    const auto out = run_generation(small_corpus(3), config_for(stub, dir / "cache"), options, client, nullptr);
    REQUIRE(out.size() == 3);
    CHECK(out[0].model_tag == "model1-t0.10");
    CHECK(out[2].model_tag == "model1-t1.00");
    CHECK(out[1].corpus.size() == 3);
    CHECK(stub.request_count() == 9);
    auto pairs = cfp::corpus::pair(small_corpus(3), out[1].corpus);
    CHECK(pairs.pairs.size() == 3);
  }
}

TEST_SUITE("wayback") {
  TEST_CASE("closest capture at or before the date") {
    WaybackStub archive({"20200215", "20200228", "20200315"});
    TempDir dir;
    cfp::http::LiveClient client;
    WaybackConfig config;
    config.api_url = archive.api_url();
    config.cache_dir = dir.str();
    WaybackClient wayback(config, client);

    const auto s = wayback.fetch("https://example.org/summary", cfp::Date(2020, 3, 1));
    CHECK(s.timestamp == "20200228120000");
    CHECK(s.description == "Framework text captured 20200228.");
    CHECK(s.snapshot_date() == cfp::Date(2020, 2, 28));

    // Nearest capture is after the date; the client must walk back.
    const auto t = wayback.fetch("https://example.org/summary", cfp::Date(2020, 3, 13));
    CHECK(t.timestamp == "20200228120000");

    const int before = archive.api_requests() + archive.page_requests();
    const auto cached = wayback.fetch("https://example.org/summary", cfp::Date(2020, 3, 1));
    CHECK(cached.description == s.description);
    CHECK(archive.api_requests() + archive.page_requests() == before);

    WaybackClient fresh(config, client);
    fresh.fetch("https://example.org/summary", cfp::Date(2020, 3, 1));
    CHECK(fresh.network_requests() == 0);
  }

  TEST_CASE("fallback after the date and not found") {
    WaybackStub archive({"20200310"});
    cfp::http::LiveClient client;
    WaybackConfig config;
    config.api_url = archive.api_url();
    config.horizon_days = 60;
    WaybackClient wayback(config, client);
    CHECK(wayback.fetch("https://example.org/s", cfp::Date(2020, 3, 1)).timestamp == "20200310120000");
    try {
      wayback.fetch("https://example.org/s", cfp::Date(2020, 2, 1));
      FAIL("expected failure");
    } catch (const cfp::Error& e) {
      CHECK(e.code() == cfp::ErrorCode::kSnapshotNotFound);
    }

    WaybackStub empty({});
    config.api_url = empty.api_url();
    WaybackClient none(config, client);
    try {
      none.fetch("https://example.org/s", cfp::Date(2020, 3, 1));
      FAIL("expected failure");
    } catch (const cfp::Error& e) {
      CHECK(e.code() == cfp::ErrorCode::kSnapshotNotFound);
    }
  }

  TEST_CASE("extraction failure keeps the page") {
    WaybackStub archive({"20200301"});
    archive.blank_pages(true);
    TempDir dir;
    cfp::http::LiveClient client;
    WaybackConfig config;
    config.api_url = archive.api_url();
    config.cache_dir = dir.str();
    WaybackClient wayback(config, client);
    try {
      wayback.fetch("https://example.org/s", cfp::Date(2020, 3, 1));
      FAIL("expected failure");
    } catch (const cfp::Error& e) {
      CHECK(e.code() == cfp::ErrorCode::kExtraction);
    }
    CHECK(std::filesystem::exists(dir / "wayback/failed"));
    CHECK_FALSE(std::filesystem::is_empty(dir / "wayback/failed"));

    config.extract_pattern = "<div>([^<]+)</div>";
    WaybackClient custom(config, client);
    CHECK(custom.fetch("https://example.org/s", cfp::Date(2020, 3, 1)).description == "nothing here");
  }

  TEST_CASE("default extraction order") {
    CHECK(extract_description("<meta property=\"og:description\" content=\"OG\"><p>P</p>", "") == "OG");
    CHECK(extract_description("<p> </p><p>First &amp; real</p>", "") == "First & real");
    CHECK(extract_description("<div>x</div>", "").empty());
  }
}
