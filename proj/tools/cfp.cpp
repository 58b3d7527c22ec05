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

// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cfp/cfp.h"

namespace {

struct OptionSpec {
  const char* name;
  const char* help;
  bool flag = false;
};

const std::map<std::string, std::vector<OptionSpec>>& option_specs() {
  static const std::map<std::string, std::vector<OptionSpec>> specs = {
      {"ingest",
       {{"input", "raw corpus file (Kaggle CBC CSV or JSONL)"},
        {"format", "kaggle-cbc or jsonl (default: by file extension)"},
        {"out", "cleaned corpus JSONL to write"},
        {"rejects", "rejected-row log (default: <out stem>.rejects.jsonl)"},
        {"label", "corpus label recorded on each article (default: real)"},
        {"boilerplate", "file of boilerplate patterns replacing the shipped list"}}},
      {"measure",
       {{"corpus", "cleaned corpus JSONL"},
        {"out-dir", "directory for measurement outputs"},
        {"label", "corpus label for the frequency table"},
        {"tagger", "builtin, external-file or external-process (default: builtin)"},
        {"tagger-command", "shell command for the external-process tagger"},
        {"tagger-responses", "response file for the external-file tagger"},
        {"gazetteer-gpe", "place gazetteer replacing the shipped one"},
        {"gazetteer-org", "organization gazetteer replacing the shipped one"},
        {"person-cues", "person title cues replacing the shipped list"},
        {"non-entity", "capitalized words never tagged"},
        {"lexicon", "sentiment lexicon replacing the shipped one"},
        {"flip-rules", "flip rule JSON, or none"},
        {"no-flips", "disable polarity flips", true},
        {"skip-empty-sentences", "leave sentences without lexicon hits out of the mean", true},
        {"dump-sentences", "also write sentences.jsonl", true},
        {"vocab-filter", "none, vader or a word-list file (default: none)"},
        {"threads", "worker threads (default: hardware concurrency)"}}},
      {"compare",
       {{"real", "measure output directory (or measures.jsonl) of the real corpus"},
        {"generated", "measure output directory (or measures.jsonl) of the generated corpus"},
        {"out-dir", "directory for the report and figures"},
        {"real-label", "label for the real corpus (default: real)"},
        {"generated-label", "label for the generated corpus (default: generated)"},
        {"stage-split", "first date of the second stage (default: 2020-03-01)"},
        {"bins", "histogram bins for the overlap coefficient (default: 100)"},
        {"top-k", "rows in the side-by-side keyness table (default: 20)"},
        {"vocab-filter", "none, vader or a word-list file (default: vader)"},
        {"keyness-mode", "filter-first or filter-display (default: filter-first)"},
        {"lexicon", "lexicon backing the vader vocabulary filter"}}},
      {"generate",
       {{"corpus", "cleaned real corpus JSONL supplying titles and descriptions"},
        {"out-dir", "directory for generated corpora"},
        {"strategy", "standard, static or rolling (default: standard)"},
        {"temperature", "sampling temperature (default: 0.5)"},
        {"temperatures", "comma-separated temperatures, one run each"},
        {"endpoint", "completion endpoint URL (env CFP_ENDPOINT)"},
        {"model", "model name sent with each request"},
        {"max-tokens", "completion length limit (default: 750)"},
        {"max-in-flight", "concurrent requests (default: 4)"},
        {"retries", "attempts per request (default: 3)"},
        {"backoff-ms", "initial retry backoff in milliseconds (default: 500)"},
        {"timeout-seconds", "per-request read timeout (default: 300)"},
        {"cache-dir", "response cache (default: <out-dir>/cache, env CFP_CACHE_DIR)"},
        {"framework-source", "page whose archived description is the framework"},
        {"framework-file", "local framework text for the static strategy"},
        {"static-as-of", "snapshot date for the static strategy (default: 2020-05-15)"},
        {"framework-window-days", "largest snapshot/article gap for rolling (default: 31)"},
        {"wayback-api", "archive availability API URL"},
        {"extract-pattern", "regex whose first group is the framework text"}}},
  };
  return specs;
}

int report_failure(cfp_status status) {
  std::fprintf(stderr, "cfp: error (%s): %s\n", cfp_status_name(status), cfp_last_error());
  return cfp_exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compare real and language-model generated news corpora."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cfp_version()));
  std::string config_path;
  app.add_option("--config", config_path, "TOML-style config file")
      ->check(CLI::ExistingFile);

  struct Bound {
    CLI::App* sub;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
  };
  std::map<std::string, Bound> bound;
  const std::map<std::string, std::string> descriptions = {
      {"ingest", "clean, deduplicate and validate a raw corpus"},
      {"measure", "score sentiment, tag entities and count words"},
      {"compare", "compare two measured corpora"},
      {"generate", "generate articles from titles and descriptions"},
  };
  for (const auto& [command, specs] : option_specs()) {
    Bound& b = bound[command];
    b.sub = app.add_subcommand(command, descriptions.at(command));
    for (const auto& spec : specs) {
      const std::string flag = std::string("--") + spec.name;
      if (spec.flag) {
        b.options[spec.name] = b.sub->add_flag(flag, spec.help);
      } else {
        b.options[spec.name] = b.sub->add_option(flag, b.values[spec.name], spec.help);
      }
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (auto& [command, b] : bound) {
    if (!b.sub->parsed()) continue;
    cfp_options* options = nullptr;
    cfp_status status = cfp_options_new(&options);
    if (status != CFP_OK) return report_failure(status);

    auto set = [&](const std::string& key, const std::string& value) {
      if (status == CFP_OK) status = cfp_options_set(options, key.c_str(), value.c_str());
    };
    if (!config_path.empty()) {
      status = cfp_options_load_config(options, command.c_str(), config_path.c_str());
    }
    for (const auto& [env, key] : {std::pair<const char*, const char*>{"CFP_ENDPOINT", "endpoint"},
                                   {"CFP_CACHE_DIR", "cache-dir"}}) {
      const char* v = std::getenv(env);
      if (v != nullptr && *v != '\0' && cfp_option_known(command.c_str(), key)) set(key, v);
    }
    for (const auto& [key, opt] : b.options) {
      if (opt->count() == 0) continue;
      set(key, b.values.count(key) ? b.values[key] : "true");
    }

    char* summary = nullptr;
    if (status == CFP_OK) status = cfp_run(command.c_str(), options, &summary);
    cfp_options_free(options);
    if (status != CFP_OK) return report_failure(status);
    std::printf("%s\n", summary);
    cfp_string_free(summary);
    return 0;
  }
  return 2;
}
