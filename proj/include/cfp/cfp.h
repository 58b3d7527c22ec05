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

#ifndef CFP_CFP_H_
#define CFP_CFP_H_

/* C interface to the cfp library. All handles are opaque; every fallible
 * function returns a cfp_status and leaves a message retrievable with
 * cfp_last_error() on the calling thread. Strings returned through char**
 * out-parameters are owned by the caller and released with cfp_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CFP_BUILDING_LIBRARY)
#    define CFP_API __declspec(dllexport)
#  else
#    define CFP_API __declspec(dllimport)
#  endif
#else
#  define CFP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cfp_status {
  CFP_OK = 0,
  CFP_ERR_INVALID_ARGUMENT = 1,
  CFP_ERR_IO = 2,
  CFP_ERR_SCHEMA = 3,
  CFP_ERR_PARSE = 4,
  CFP_ERR_DEGENERATE = 5,
  CFP_ERR_UNDEFINED = 6,
  CFP_ERR_ABSENT_WORD = 7,
  CFP_ERR_AMBIGUOUS = 8,
  CFP_ERR_TAGGER = 9,
  CFP_ERR_PROMPT = 10,
  CFP_ERR_MISSING_FRAMEWORK = 11,
  CFP_ERR_SNAPSHOT_NOT_FOUND = 12,
  CFP_ERR_EXTRACTION = 13,
  CFP_ERR_TRANSPORT = 14,
  CFP_ERR_MALFORMED_RESPONSE = 15,
  CFP_ERR_GENERATION = 16,
  CFP_ERR_LOCKED = 17,
  CFP_ERR_INTERNAL = 18
} cfp_status;

typedef enum cfp_format {
  CFP_FORMAT_KAGGLE_CBC_CSV = 0,
  CFP_FORMAT_JSONL = 1
} cfp_format;

typedef struct cfp_analyzer cfp_analyzer;
typedef struct cfp_corpus cfp_corpus;
typedef struct cfp_tagger cfp_tagger;
typedef struct cfp_options cfp_options;

typedef struct cfp_ingest_summary {
  size_t read;
  size_t cleaned;
  size_t deduped;
  size_t rejected;
  size_t retained;
} cfp_ingest_summary;

typedef struct cfp_entity_tally {
  size_t person;
  size_t gpe;
  size_t org;
  size_t unique_entities;
  size_t token_length;
} cfp_entity_tally;

CFP_API const char* cfp_version(void);
CFP_API const char* cfp_last_error(void);
CFP_API const char* cfp_status_name(cfp_status status);
/* 0 success, 2 usage/schema error, 1 any other failure. */
CFP_API int cfp_exit_code(cfp_status status);
CFP_API void cfp_string_free(char* s);

/* Sentiment. Null paths select the shipped lexicon / flip rules; flip_rules
 * may also be the string "none" to disable flipping. */
CFP_API cfp_status cfp_analyzer_new(const char* lexicon_path, const char* flip_rules_path,
                                    cfp_analyzer** out);
CFP_API void cfp_analyzer_free(cfp_analyzer* analyzer);
CFP_API cfp_status cfp_analyzer_score_sentence(const cfp_analyzer* analyzer,
                                               const char* sentence, int apply_flips,
                                               double* compound);
CFP_API cfp_status cfp_analyzer_score_text(const cfp_analyzer* analyzer, const char* text,
                                           double* mean_compound, size_t* n_sentences);

/* Corpus. */
CFP_API cfp_status cfp_corpus_ingest_file(const char* path, cfp_format format,
                                          const char* boilerplate_path, cfp_corpus** out,
                                          cfp_ingest_summary* summary);
CFP_API void cfp_corpus_free(cfp_corpus* corpus);
CFP_API size_t cfp_corpus_size(const cfp_corpus* corpus);
CFP_API cfp_status cfp_corpus_article_id(const cfp_corpus* corpus, size_t index, char** id);
CFP_API cfp_status cfp_corpus_write_jsonl(const cfp_corpus* corpus, const char* path);
CFP_API cfp_status cfp_clean_text(const char* raw_body, char** cleaned);

/* Entities. kind is "builtin", "external-file" (argument = response file) or
 * "external-process" (argument = shell command). */
CFP_API cfp_status cfp_tagger_new(const char* kind, const char* argument, cfp_tagger** out);
CFP_API void cfp_tagger_free(cfp_tagger* tagger);
/* Writes the exchange-format response line for the text. */
CFP_API cfp_status cfp_tagger_tag(cfp_tagger* tagger, const char* article_id, const char* text,
                                  char** response_json);
CFP_API cfp_status cfp_tagger_tally(cfp_tagger* tagger, const char* article_id,
                                    const char* text, cfp_entity_tally* tally, double* focus);
CFP_API cfp_status cfp_focus(size_t unique_entities, size_t token_length, double* focus);

/* Keyness. */
CFP_API cfp_status cfp_keyness_expected(uint64_t observed_a, uint64_t observed_b,
                                        uint64_t total_a, uint64_t total_b,
                                        double* expected_a, double* expected_b);
CFP_API cfp_status cfp_keyness_log_likelihood(uint64_t observed_a, uint64_t observed_b,
                                              uint64_t total_a, uint64_t total_b, double* ll);

/* Statistics. */
CFP_API cfp_status cfp_stats_cohen_d(const double* a, size_t n_a, const double* b, size_t n_b,
                                     double* d);
CFP_API cfp_status cfp_stats_overlap(const double* a, size_t n_a, const double* b, size_t n_b,
                                     size_t bins, double* overlap);
CFP_API cfp_status cfp_stats_pearson_r(const double* x, const double* y, size_t n, double* r);

/* Prompts. strategy is "standard", "static" or "rolling"; framework may be
 * null for the standard strategy. */
CFP_API cfp_status cfp_prompt_build(const char* title, const char* description,
                                    const char* strategy, const char* framework,
                                    char** serialized);

/* Workflows. Options are string key/value pairs; see the README for the
 * keys each command accepts. */
CFP_API cfp_status cfp_options_new(cfp_options** out);
CFP_API void cfp_options_free(cfp_options* options);
CFP_API cfp_status cfp_options_set(cfp_options* options, const char* key, const char* value);
CFP_API int cfp_option_known(const char* command, const char* key);
/* Loads a TOML-style config file into options for one command. Top-level
 * keys apply to every command that accepts them; keys under [command] apply
 * to that command only and must be known to it. */
CFP_API cfp_status cfp_options_load_config(cfp_options* options, const char* command,
                                           const char* path);
/* command: "ingest", "measure", "compare" or "generate". */
CFP_API cfp_status cfp_run(const char* command, const cfp_options* options, char** summary_json);

#ifdef __cplusplus
}
#endif

#endif /* CFP_CFP_H_ */
