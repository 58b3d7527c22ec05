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

#include <atomic>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cfp/cache.hpp"
#include "cfp/corpus.hpp"
#include "cfp/http.hpp"
#include "cfp/prompt.hpp"

namespace cfp::simulate {

struct GenerationConfig {
  std::string endpoint;
  std::string model;  // omitted from requests when empty
  double temperature = 0.50;
  int max_tokens = 750;
  std::size_t max_in_flight = 4;
  http::RetryPolicy retry;
  std::string cache_dir;  // empty disables caching
};

void validate(const GenerationConfig& config);  // throws kInvalidArgument

// Request body: {"model"?, "prompt", "temperature", "max_tokens"}.
std::string completion_request_json(const GenerationConfig& config, const std::string& prompt);

// choices[0].text of an OpenAI-compatible completion response; throws
// kMalformedResponse when absent.
std::string completion_text(const std::string& response_body);

// Recovers the article body from completion text: drops an echoed prompt,
// stops at the closing "'}" delimiter and unescapes the value.
std::string extract_body(const std::string& completion, const std::string& prompt);

std::string model_tag(Strategy strategy, double temperature);  // "model3-t0.50"

class Generator {
 public:
  Generator(GenerationConfig config, http::Client& client);

  // Throws kTransport after retries and kMalformedResponse on bad payloads.
  corpus::Article generate_article(const PromptRecord& prompt, const corpus::Article& source,
                                   const std::string& tag);

  // True when the prompt's completion is already cached.
  bool cached(const PromptRecord& prompt) const;

  std::size_t network_calls() const { return network_calls_.load(); }
  std::size_t cache_hits() const { return cache_hits_.load(); }
  const GenerationConfig& config() const { return config_; }

 private:
  std::string cache_key(const std::string& request_json) const;

  GenerationConfig config_;
  http::Client& client_;
  FileCache cache_;
  std::atomic<std::size_t> network_calls_{0};
  std::atomic<std::size_t> cache_hits_{0};
};

struct Failure {
  std::string article_id;
  std::string reason;
};

struct RunOutput {
  double temperature = 0.0;
  std::string model_tag;
  corpus::Corpus corpus;
  std::vector<Failure> failures;
  std::size_t network_calls = 0;
};

// Supplies the framework snapshot for an article (rolling and static
// strategies); may throw, which marks that article failed.
using FrameworkProvider = std::function<FrameworkSnapshot(const corpus::Article&)>;

struct RunOptions {
  Strategy strategy = Strategy::kStandard;
  std::vector<double> temperatures{0.50};
  std::string checkpoint_dir;  // empty disables checkpointing
  int framework_window_days = 31;
  std::function<void(std::size_t done, std::size_t total)> progress;
};

// One output corpus per temperature. Requests run on up to max_in_flight
// workers; completed ids are appended to checkpoint-<tag>.jsonl after their
// cache entry is written. Throws kGeneration only when every article fails.
std::vector<RunOutput> run_generation(const corpus::Corpus& corpus, const GenerationConfig& config,
                                      const RunOptions& options, http::Client& client,
                                      const FrameworkProvider& framework);

}  // namespace cfp::simulate
