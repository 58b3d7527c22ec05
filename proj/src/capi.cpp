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

#include "cfp/cfp.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "cfp/corpus.hpp"
#include "cfp/entities.hpp"
#include "cfp/error.hpp"
#include "cfp/keyness.hpp"
#include "cfp/pipeline.hpp"
#include "cfp/prompt.hpp"
#include "cfp/sentiment.hpp"
#include "cfp/stats.hpp"
#include "cfp/text.hpp"
#include "cfp/wayback.hpp"

struct cfp_analyzer {
  cfp::sentiment::Analyzer impl;
};

struct cfp_corpus {
  cfp::corpus::Corpus impl;
};

struct cfp_tagger {
  std::unique_ptr<cfp::entities::Tagger> impl;
};

struct cfp_options {
  cfp::pipeline::Options impl;
};

namespace {

thread_local std::string g_last_error;

cfp_status to_status(cfp::ErrorCode code) {
  using cfp::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return CFP_ERR_INVALID_ARGUMENT;
    case ErrorCode::kIo: return CFP_ERR_IO;
    case ErrorCode::kSchema: return CFP_ERR_SCHEMA;
    case ErrorCode::kParse: return CFP_ERR_PARSE;
    case ErrorCode::kDegenerateDistribution: return CFP_ERR_DEGENERATE;
    case ErrorCode::kUndefinedFocus:
    case ErrorCode::kUndefinedCorrelation:
    case ErrorCode::kUndefinedExpected: return CFP_ERR_UNDEFINED;
    case ErrorCode::kAbsentWord: return CFP_ERR_ABSENT_WORD;
    case ErrorCode::kAmbiguity: return CFP_ERR_AMBIGUOUS;
    case ErrorCode::kTagger: return CFP_ERR_TAGGER;
    case ErrorCode::kPrompt: return CFP_ERR_PROMPT;
    case ErrorCode::kMissingFramework: return CFP_ERR_MISSING_FRAMEWORK;
    case ErrorCode::kSnapshotNotFound: return CFP_ERR_SNAPSHOT_NOT_FOUND;
    case ErrorCode::kExtraction: return CFP_ERR_EXTRACTION;
    case ErrorCode::kTransport: return CFP_ERR_TRANSPORT;
    case ErrorCode::kMalformedResponse: return CFP_ERR_MALFORMED_RESPONSE;
    case ErrorCode::kGeneration: return CFP_ERR_GENERATION;
    case ErrorCode::kLocked: return CFP_ERR_LOCKED;
    case ErrorCode::kInternal: return CFP_ERR_INTERNAL;
  }
  return CFP_ERR_INTERNAL;
}

template <typename F>
cfp_status guard(F&& body) {
  try {
    g_last_error.clear();
    body();
    return CFP_OK;
  } catch (const cfp::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CFP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CFP_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) cfp::fail(cfp::ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bool set(const char* s) { return s != nullptr && *s != '\0'; }

}  // namespace

extern "C" {

const char* cfp_version(void) { return cfp::pipeline::kVersion.data(); }

const char* cfp_last_error(void) { return g_last_error.c_str(); }

const char* cfp_status_name(cfp_status status) {
  switch (status) {
    case CFP_OK: return "ok";
    case CFP_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case CFP_ERR_IO: return "io";
    case CFP_ERR_SCHEMA: return "schema";
    case CFP_ERR_PARSE: return "parse";
    case CFP_ERR_DEGENERATE: return "degenerate_distribution";
    case CFP_ERR_UNDEFINED: return "undefined";
    case CFP_ERR_ABSENT_WORD: return "absent_word";
    case CFP_ERR_AMBIGUOUS: return "ambiguous";
    case CFP_ERR_TAGGER: return "tagger";
    case CFP_ERR_PROMPT: return "prompt";
    case CFP_ERR_MISSING_FRAMEWORK: return "missing_framework";
    case CFP_ERR_SNAPSHOT_NOT_FOUND: return "snapshot_not_found";
    case CFP_ERR_EXTRACTION: return "extraction";
    case CFP_ERR_TRANSPORT: return "transport";
    case CFP_ERR_MALFORMED_RESPONSE: return "malformed_response";
    case CFP_ERR_GENERATION: return "generation";
    case CFP_ERR_LOCKED: return "locked";
    case CFP_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

int cfp_exit_code(cfp_status status) {
  switch (status) {
    case CFP_OK: return 0;
    case CFP_ERR_INVALID_ARGUMENT:
    case CFP_ERR_SCHEMA: return 2;
    default: return 1;
  }
}

void cfp_string_free(char* s) { std::free(s); }

cfp_status cfp_analyzer_new(const char* lexicon_path, const char* flip_rules_path,
                            cfp_analyzer** out) {
  return guard([&] {
    need(out, "out");
    auto lexicon = set(lexicon_path) ? cfp::sentiment::Lexicon::from_file(lexicon_path)
                                     : cfp::sentiment::Lexicon::builtin();
    std::vector<cfp::sentiment::FlipRule> rules;
    if (!set(flip_rules_path)) {
      rules = cfp::sentiment::default_flip_rules();
    } else if (std::string(flip_rules_path) != "none") {
      rules = cfp::sentiment::parse_flip_rules(cfp::text::read_file(flip_rules_path));
    }
    *out = new cfp_analyzer{cfp::sentiment::Analyzer(
        std::move(lexicon), cfp::sentiment::EmojiTable::builtin(), std::move(rules))};
  });
}

void cfp_analyzer_free(cfp_analyzer* analyzer) { delete analyzer; }

cfp_status cfp_analyzer_score_sentence(const cfp_analyzer* analyzer, const char* sentence,
                                       int apply_flips, double* compound) {
  return guard([&] {
    need(analyzer, "analyzer");
    need(sentence, "sentence");
    need(compound, "compound");
    *compound = analyzer->impl.score_sentence(sentence, apply_flips != 0).compound;
  });
}

cfp_status cfp_analyzer_score_text(const cfp_analyzer* analyzer, const char* text,
                                   double* mean_compound, size_t* n_sentences) {
  return guard([&] {
    need(analyzer, "analyzer");
    need(text, "text");
    need(mean_compound, "mean_compound");
    auto s = analyzer->impl.score_text("", text);
    *mean_compound = s.mean_compound;
    if (n_sentences != nullptr) *n_sentences = s.n_sentences;
  });
}

cfp_status cfp_corpus_ingest_file(const char* path, cfp_format format,
                                  const char* boilerplate_path, cfp_corpus** out,
                                  cfp_ingest_summary* summary) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    const auto fmt = format == CFP_FORMAT_KAGGLE_CBC_CSV ? cfp::corpus::Format::kKaggleCbcCsv
                                                         : cfp::corpus::Format::kJsonl;
    const auto cleaner = set(boilerplate_path) ? cfp::corpus::Cleaner::from_file(boilerplate_path)
                                               : cfp::corpus::Cleaner();
    auto result = cfp::corpus::ingest_file(path, fmt, cleaner, "");
    if (summary != nullptr) {
      summary->read = result.summary.read;
      summary->cleaned = result.summary.cleaned;
      summary->deduped = result.summary.deduped;
      summary->rejected = result.summary.rejected;
      summary->retained = result.summary.retained;
    }
    *out = new cfp_corpus{std::move(result.corpus)};
  });
}

void cfp_corpus_free(cfp_corpus* corpus) { delete corpus; }

size_t cfp_corpus_size(const cfp_corpus* corpus) { return corpus ? corpus->impl.size() : 0; }

cfp_status cfp_corpus_article_id(const cfp_corpus* corpus, size_t index, char** id) {
  return guard([&] {
    need(corpus, "corpus");
    need(id, "id");
    if (index >= corpus->impl.size()) {
      cfp::fail(cfp::ErrorCode::kInvalidArgument, "article index out of range");
    }
    *id = dup_string(corpus->impl.articles()[index].id);
  });
}

cfp_status cfp_corpus_write_jsonl(const cfp_corpus* corpus, const char* path) {
  return guard([&] {
    need(corpus, "corpus");
    need(path, "path");
    cfp::corpus::write_jsonl(corpus->impl, path);
  });
}

cfp_status cfp_clean_text(const char* raw_body, char** cleaned) {
  return guard([&] {
    need(raw_body, "raw_body");
    need(cleaned, "cleaned");
    *cleaned = dup_string(cfp::corpus::clean(raw_body));
  });
}

cfp_status cfp_tagger_new(const char* kind, const char* argument, cfp_tagger** out) {
  return guard([&] {
    need(kind, "kind");
    need(out, "out");
    const std::string k = kind;
    std::unique_ptr<cfp::entities::Tagger> impl;
    if (k == "builtin") {
      impl = std::make_unique<cfp::entities::BuiltinTagger>();
    } else if (k == "external-file") {
      need(argument, "argument");
      impl = std::make_unique<cfp::entities::FileExchangeTagger>(argument);
    } else if (k == "external-process") {
      need(argument, "argument");
      impl = std::make_unique<cfp::entities::ProcessExchangeTagger>(argument);
    } else {
      cfp::fail(cfp::ErrorCode::kInvalidArgument, "unknown tagger kind '" + k + "'");
    }
    *out = new cfp_tagger{std::move(impl)};
  });
}

void cfp_tagger_free(cfp_tagger* tagger) { delete tagger; }

cfp_status cfp_tagger_tag(cfp_tagger* tagger, const char* article_id, const char* text,
                          char** response_json) {
  return guard([&] {
    need(tagger, "tagger");
    need(article_id, "article_id");
    need(text, "text");
    need(response_json, "response_json");
    auto mentions = tagger->impl->tag(article_id, text);
    *response_json = dup_string(cfp::entities::exchange_response(article_id, mentions));
  });
}

cfp_status cfp_tagger_tally(cfp_tagger* tagger, const char* article_id, const char* text,
                            cfp_entity_tally* tally, double* focus) {
  return guard([&] {
    need(tagger, "tagger");
    need(article_id, "article_id");
    need(text, "text");
    need(tally, "tally");
    auto mentions = tagger->impl->tag(article_id, text);
    auto t = cfp::entities::tally(article_id, text, mentions);
    tally->person = t.person;
    tally->gpe = t.gpe;
    tally->org = t.org;
    tally->unique_entities = t.unique_entities;
    tally->token_length = t.token_length;
    if (focus != nullptr) *focus = cfp::entities::focus(t).focus;
  });
}

cfp_status cfp_focus(size_t unique_entities, size_t token_length, double* focus) {
  return guard([&] {
    need(focus, "focus");
    cfp::entities::EntityTally t;
    t.unique_entities = unique_entities;
    t.token_length = token_length;
    *focus = cfp::entities::focus(t).focus;
  });
}

cfp_status cfp_keyness_expected(uint64_t observed_a, uint64_t observed_b, uint64_t total_a,
                                uint64_t total_b, double* expected_a, double* expected_b) {
  return guard([&] {
    need(expected_a, "expected_a");
    need(expected_b, "expected_b");
    auto [ea, eb] = cfp::keyness::expected_frequencies(observed_a, observed_b, total_a, total_b);
    *expected_a = ea;
    *expected_b = eb;
  });
}

cfp_status cfp_keyness_log_likelihood(uint64_t observed_a, uint64_t observed_b, uint64_t total_a,
                                      uint64_t total_b, double* ll) {
  return guard([&] {
    need(ll, "ll");
    *ll = cfp::keyness::log_likelihood("", observed_a, observed_b, total_a, total_b).log_likelihood;
  });
}

cfp_status cfp_stats_cohen_d(const double* a, size_t n_a, const double* b, size_t n_b, double* d) {
  return guard([&] {
    need(d, "d");
    if (n_a > 0) need(a, "a");
    if (n_b > 0) need(b, "b");
    *d = cfp::stats::cohen_d({a, n_a}, {b, n_b});
  });
}

cfp_status cfp_stats_overlap(const double* a, size_t n_a, const double* b, size_t n_b,
                             size_t bins, double* overlap) {
  return guard([&] {
    need(overlap, "overlap");
    if (n_a > 0) need(a, "a");
    if (n_b > 0) need(b, "b");
    *overlap = cfp::stats::overlap_coefficient({a, n_a}, {b, n_b}, bins);
  });
}

cfp_status cfp_stats_pearson_r(const double* x, const double* y, size_t n, double* r) {
  return guard([&] {
    need(r, "r");
    if (n > 0) {
      need(x, "x");
      need(y, "y");
    }
    *r = cfp::stats::pearson_r({x, n}, {y, n});
  });
}

cfp_status cfp_prompt_build(const char* title, const char* description, const char* strategy,
                            const char* framework, char** serialized) {
  return guard([&] {
    need(title, "title");
    need(description, "description");
    need(strategy, "strategy");
    need(serialized, "serialized");
    const auto s = cfp::simulate::parse_strategy(strategy);
    cfp::corpus::Article article;
    article.title = title;
    article.description = description;
    std::optional<cfp::simulate::FrameworkSnapshot> snapshot;
    if (framework != nullptr) {
      snapshot.emplace();
      snapshot->description = framework;
      snapshot->as_of = article.published_at;
      snapshot->timestamp = article.published_at.compact() + "000000";
    }
    auto record = cfp::simulate::build_prompt(article, s, snapshot ? &*snapshot : nullptr);
    *serialized = dup_string(record.serialized);
  });
}

cfp_status cfp_options_new(cfp_options** out) {
  return guard([&] {
    need(out, "out");
    *out = new cfp_options{};
  });
}

void cfp_options_free(cfp_options* options) { delete options; }

cfp_status cfp_options_set(cfp_options* options, const char* key, const char* value) {
  return guard([&] {
    need(options, "options");
    need(key, "key");
    options->impl[key] = value != nullptr ? value : "";
  });
}

int cfp_option_known(const char* command, const char* key) {
  if (command == nullptr || key == nullptr) return 0;
  return cfp::pipeline::is_known_option(command, key) ? 1 : 0;
}

cfp_status cfp_options_load_config(cfp_options* options, const char* command,
                                   const char* path) {
  return guard([&] {
    need(options, "options");
    need(command, "command");
    need(path, "path");
    const std::string cmd = command;
    const auto config = cfp::pipeline::parse_config(cfp::text::read_file(path));
    for (const auto& [key, value] : config) {
      const auto dot = key.find('.');
      if (dot == std::string::npos) {
        bool anywhere = false;
        for (const char* c : {"ingest", "measure", "compare", "generate"}) {
          anywhere = anywhere || cfp::pipeline::is_known_option(c, key);
        }
        if (!anywhere) {
          cfp::fail(cfp::ErrorCode::kInvalidArgument, std::string(path) + ": unknown key '" + key + "'");
        }
        if (cfp::pipeline::is_known_option(cmd, key)) options->impl[key] = value;
        continue;
      }
      if (key.substr(0, dot) != cmd) continue;
      const std::string name = key.substr(dot + 1);
      if (!cfp::pipeline::is_known_option(cmd, name)) {
        cfp::fail(cfp::ErrorCode::kInvalidArgument,
                  std::string(path) + ": unknown key '" + name + "' in [" + cmd + "]");
      }
      options->impl[name] = value;
    }
  });
}

cfp_status cfp_run(const char* command, const cfp_options* options, char** summary_json) {
  return guard([&] {
    need(command, "command");
    static const cfp::pipeline::Options empty;
    const std::string summary =
        cfp::pipeline::run_command(command, options != nullptr ? options->impl : empty);
    if (summary_json != nullptr) *summary_json = dup_string(summary);
  });
}

}  // extern "C"
