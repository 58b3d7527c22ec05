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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace cfp::corpus {
class Corpus;
}

namespace cfp::keyness {

using WordSet = std::unordered_set<std::string>;

struct FrequencyTable {
  std::string corpus_label;
  std::string filter_name = "none";
  std::uint64_t total = 0;  // N
  std::map<std::string, std::uint64_t> counts;

  std::uint64_t count(const std::string& word) const;
  void add(const std::string& word, std::uint64_t n = 1);
  void merge(const FrequencyTable& other);
};

// Lower-cased scoring tokens of each text; with a filter, only member words
// are counted and N is the filtered total.
FrequencyTable build_frequency_table(const std::vector<std::string>& texts,
                                     const WordSet* filter,
                                     std::string corpus_label = {});
FrequencyTable build_frequency_table(const corpus::Corpus& corpus,
                                     const WordSet* filter);
// Restricts an existing table (display-time conditioning). N is recomputed
// as the filtered total.
FrequencyTable restrict(const FrequencyTable& table, const WordSet& filter,
                        std::string filter_name);

// JSON object {"corpus_label", "filter", "N", "counts": {...}}.
std::string to_json(const FrequencyTable& table);
FrequencyTable from_json(std::string_view text);

enum class Favored { kA, kB, kNeither };

struct KeynessEntry {
  std::string word;
  std::uint64_t observed_a = 0;
  std::uint64_t observed_b = 0;
  double expected_a = 0.0;
  double expected_b = 0.0;
  double log_likelihood = 0.0;
  Favored favored = Favored::kNeither;
};

// E_i = N_i * (O_a + O_b) / (N_a + N_b). Throws kUndefinedExpected when both
// totals are zero.
std::pair<double, double> expected_frequencies(std::uint64_t observed_a, std::uint64_t observed_b,
                                               std::uint64_t total_a, std::uint64_t total_b);

// LL = 2 * sum O_i ln(O_i / E_i) with 0 ln 0 = 0; exactly zero for
// proportional counts. Throws kAbsentWord when both counts are zero.
KeynessEntry log_likelihood(std::string_view word, std::uint64_t observed_a, std::uint64_t observed_b,
                            std::uint64_t total_a, std::uint64_t total_b);
KeynessEntry log_likelihood(std::string_view word, const FrequencyTable& a,
                            const FrequencyTable& b);

struct RankedKeywords {
  std::vector<KeynessEntry> favor_a;
  std::vector<KeynessEntry> favor_b;
};

// Entries with LL > 0 split by favored corpus, sorted by LL descending, then
// favored-side count descending, then word. top_k == 0 keeps everything.
RankedKeywords rank_keywords(const FrequencyTable& a, const FrequencyTable& b,
                             std::size_t top_k);

// One row per entry: word,O_A,O_B,E_A,E_B,LL,favored
std::string keyness_csv(const RankedKeywords& ranked, std::string_view label_a,
                        std::string_view label_b);

}  // namespace cfp::keyness
