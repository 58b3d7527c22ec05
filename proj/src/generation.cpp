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

#include "cfp/generation.hpp"

#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include "cfp/error.hpp"
#include "cfp/text.hpp"
#include "cfp/wayback.hpp"
#include "json.hpp"

namespace cfp::simulate {
namespace {

namespace fs = std::filesystem;

std::set<std::string> read_checkpoint(const std::string& path) {
  std::set<std::string> done;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    try {
      auto j = nlohmann::json::parse(line);
      done.insert(j.at("article_id").get<std::string>());
    } catch (const nlohmann::json::exception&) {
      // A torn last line from an interrupted run is ignored.
    }
  }
  return done;
}

}  // namespace

void validate(const GenerationConfig& config) {
  if (!(config.temperature > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "temperature must be greater than zero");
  }
  if (config.max_tokens < 1) fail(ErrorCode::kInvalidArgument, "max_tokens must be at least 1");
  if (config.max_in_flight < 1) fail(ErrorCode::kInvalidArgument, "max_in_flight must be at least 1");
  if (config.retry.attempts < 1) fail(ErrorCode::kInvalidArgument, "retry attempts must be at least 1");
}

std::string completion_request_json(const GenerationConfig& config, const std::string& prompt) {
  nlohmann::ordered_json j;
  if (!config.model.empty()) j["model"] = config.model;
  j["prompt"] = prompt;
  j["temperature"] = text::round_to(config.temperature, 6);
  j["max_tokens"] = config.max_tokens;
  return j.dump();
}

std::string completion_text(const std::string& response_body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(response_body);
  } catch (const nlohmann::json::exception&) {
    fail(ErrorCode::kMalformedResponse,
         "completion response is not JSON: " + response_body.substr(0, 200));
  }
  if (!j.is_object() || !j.contains("choices") || !j["choices"].is_array() ||
      j["choices"].empty() || !j["choices"][0].is_object() ||
      !j["choices"][0].contains("text") || !j["choices"][0]["text"].is_string()) {
    fail(ErrorCode::kMalformedResponse, "completion response lacks choices[0].text");
  }
  return j["choices"][0]["text"].get<std::string>();
}

std::string extract_body(const std::string& completion, const std::string& prompt) {
  std::string_view rest = completion;
  if (!prompt.empty() && text::starts_with(rest, prompt)) rest.remove_prefix(prompt.size());
  // Escape-aware scan for the closing "'}" of the text value.
  std::size_t end = rest.size();
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (rest[i] == '\\') {
      ++i;
      continue;
    }
    if (rest[i] == '\'' && i + 1 < rest.size() && rest[i + 1] == '}') {
      end = i;
      break;
    }
  }
  return std::string(text::strip_unicode_space(unescape_value(rest.substr(0, end))));
}

std::string model_tag(Strategy strategy, double temperature) {
  return std::string(strategy_model_name(strategy)) + "-t" + text::format_fixed(temperature, 2);
}

Generator::Generator(GenerationConfig config, http::Client& client)
    : config_(std::move(config)), client_(client), cache_(config_.cache_dir, "completions") {
  validate(config_);
}

std::string Generator::cache_key(const std::string& request_json) const {
  return text::sha256_hex(request_json);
}

bool Generator::cached(const PromptRecord& prompt) const {
  return cache_.enabled() &&
         cache_.load(cache_key(completion_request_json(config_, prompt.serialized))).has_value();
}

corpus::Article Generator::generate_article(const PromptRecord& prompt,
                                            const corpus::Article& source,
                                            const std::string& tag) {
  const std::string request = completion_request_json(config_, prompt.serialized);
  const std::string key = cache_key(request);
  std::string completion;
  if (auto hit = cache_.load(key)) {
    ++cache_hits_;
    try {
      completion = nlohmann::json::parse(*hit).at("text").get<std::string>();
    } catch (const nlohmann::json::exception&) {
      fail(ErrorCode::kMalformedResponse, "corrupt cache entry " + cache_.path_for(key));
    }
  } else {
    if (config_.endpoint.empty()) {
      fail(ErrorCode::kTransport, "no completion endpoint configured and no cached completion");
    }
    http::Response r = http::with_retries(config_.retry, [&] {
      ++network_calls_;
      return client_.post_json(config_.endpoint, request);
    });
    if (r.status != 200) {
      fail(ErrorCode::kMalformedResponse,
           "completion endpoint returned HTTP " + std::to_string(r.status) + ": " +
               r.body.substr(0, 200));
    }
    completion = completion_text(r.body);
    nlohmann::ordered_json entry;
    entry["request"] = nlohmann::json::parse(request);
    entry["text"] = completion;
    cache_.store(key, entry.dump());
  }

  std::string body = corpus::clean(extract_body(completion, prompt.serialized));
  if (body.empty()) {
    fail(ErrorCode::kMalformedResponse, "completion for article " + source.id + " has no text");
  }
  corpus::Article out;
  out.title = source.title;
  out.description = source.description;
  out.published_at = source.published_at;
  out.body = std::move(body);
  out.origin = corpus::Origin::kGenerated;
  out.model_tag = tag;
  out.id = corpus::article_id(out.title, out.body);
  return out;
}

std::vector<RunOutput> run_generation(const corpus::Corpus& corpus, const GenerationConfig& config,
                                      const RunOptions& options, http::Client& client,
                                      const FrameworkProvider& framework) {
  if (options.temperatures.empty()) {
    fail(ErrorCode::kInvalidArgument, "at least one temperature is required");
  }
  std::vector<RunOutput> outputs;
  const auto& articles = corpus.articles();
  for (double temperature : options.temperatures) {
    GenerationConfig run_config = config;
    run_config.temperature = temperature;
    Generator generator(run_config, client);
    const std::string tag = model_tag(options.strategy, temperature);

    std::string checkpoint_path;
    std::set<std::string> already_done;
    if (!options.checkpoint_dir.empty()) {
      fs::create_directories(options.checkpoint_dir);
      checkpoint_path = (fs::path(options.checkpoint_dir) / ("checkpoint-" + tag + ".jsonl")).string();
      already_done = read_checkpoint(checkpoint_path);
    }

    std::vector<std::optional<corpus::Article>> results(articles.size());
    std::vector<std::string> errors(articles.size());
    std::mutex mutex;
    std::atomic<std::size_t> next{0};
    std::size_t completed = 0;

    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= articles.size()) return;
        const auto& article = articles[i];
        try {
          std::optional<FrameworkSnapshot> snapshot;
          if (options.strategy != Strategy::kStandard) {
            if (!framework) {
              fail(ErrorCode::kMissingFramework, "no framework source configured");
            }
            snapshot = framework(article);
          }
          const PromptRecord prompt = build_prompt(article, options.strategy,
                                                   snapshot ? &*snapshot : nullptr,
                                                   options.framework_window_days);
          results[i] = generator.generate_article(prompt, article, tag);
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
        std::lock_guard<std::mutex> lock(mutex);
        if (results[i] && !checkpoint_path.empty() && !already_done.count(article.id)) {
          std::ofstream out(checkpoint_path, std::ios::app);
          nlohmann::ordered_json j;
          j["article_id"] = article.id;
          j["generated_id"] = results[i]->id;
          out << j.dump() << '\n';
        }
        ++completed;
        if (options.progress) options.progress(completed, articles.size());
      }
    };
    const std::size_t workers = std::min(run_config.max_in_flight, std::max<std::size_t>(1, articles.size()));
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    RunOutput out;
    out.temperature = temperature;
    out.model_tag = tag;
    std::vector<corpus::Article> generated;
    for (std::size_t i = 0; i < articles.size(); ++i) {
      if (results[i]) {
        generated.push_back(std::move(*results[i]));
      } else {
        out.failures.push_back({articles[i].id, errors[i]});
      }
    }
    if (!articles.empty() && generated.empty()) {
      fail(ErrorCode::kGeneration, "every article failed for " + tag + "; first error: " +
                                       out.failures.front().reason);
    }
    out.corpus = corpus::Corpus(std::move(generated), tag);
    out.network_calls = generator.network_calls();
    outputs.push_back(std::move(out));
  }
  return outputs;
}

}  // namespace cfp::simulate
