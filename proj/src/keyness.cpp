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

#include "cfp/keyness.hpp"

#include <algorithm>
#include <cmath>
#include "json.hpp"

#include "cfp/corpus.hpp"
#include "cfp/error.hpp"
#include "cfp/sentiment.hpp"
#include "cfp/text.hpp"

namespace cfp::keyness {
namespace {

using u128 = unsigned __int128;

Favored compare_rates(std::uint64_t oa, std::uint64_t ob, std::uint64_t na, std::uint64_t nb) {
  const u128 lhs = static_cast<u128>(oa) * nb;
  const u128 rhs = static_cast<u128>(ob) * na;
  if (lhs > rhs) return Favored::kA;
  if (lhs < rhs) return Favored::kB;
  return Favored::kNeither;
}

double cell(std::uint64_t observed, double expected) {
  if (observed == 0) return 0.0;
  const double o = static_cast<double>(observed);
  return o * std::log(o / expected);
}

}  // namespace

std::uint64_t FrequencyTable::count(const std::string& word) const {
  auto it = counts.find(word);
  return it == counts.end() ? 0 : it->second;
}

void FrequencyTable::add(const std::string& word, std::uint64_t n) {
  counts[word] += n;
  total += n;
}

void FrequencyTable::merge(const FrequencyTable& other) {
  for (const auto& [w, n] : other.counts) counts[w] += n;
  total += other.total;
}

FrequencyTable build_frequency_table(const std::vector<std::string>& texts, const WordSet* filter,
                                     std::string corpus_label) {
  FrequencyTable table;
  table.corpus_label = std::move(corpus_label);
  if (filter) table.filter_name = "custom";
  for (const auto& t : texts) {
    for (const auto& token : sentiment::scoring_tokens(t)) {
      std::string word = text::to_lower(token);
      if (filter && !filter->count(word)) continue;
      table.add(word);
    }
  }
  return table;
}

FrequencyTable build_frequency_table(const corpus::Corpus& corpus, const WordSet* filter) {
  std::vector<std::string> bodies;
  bodies.reserve(corpus.size());
  for (const auto& a : corpus.articles()) bodies.push_back(a.body);
  return build_frequency_table(bodies, filter, corpus.label());
}

FrequencyTable restrict(const FrequencyTable& table, const WordSet& filter,
                        std::string filter_name) {
  FrequencyTable out;
  out.corpus_label = table.corpus_label;
  out.filter_name = std::move(filter_name);
  for (const auto& [w, n] : table.counts) {
    if (filter.count(w)) out.add(w, n);
  }
  return out;
}

std::string to_json(const FrequencyTable& table) {
  nlohmann::ordered_json j;
  j["corpus_label"] = table.corpus_label;
  j["filter"] = table.filter_name;
  j["N"] = table.total;
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  for (const auto& [w, n] : table.counts) counts[w] = n;
  j["counts"] = std::move(counts);
  return j.dump(1);
}

FrequencyTable from_json(std::string_view text_value) {
  FrequencyTable table;
  try {
    auto j = nlohmann::json::parse(text_value);
    table.corpus_label = j.value("corpus_label", std::string());
    table.filter_name = j.value("filter", std::string("none"));
    std::uint64_t sum = 0;
    for (const auto& [w, n] : j.at("counts").items()) {
      table.counts[w] = n.get<std::uint64_t>();
      sum += table.counts[w];
    }
    table.total = j.at("N").get<std::uint64_t>();
    if (table.total < sum) fail(ErrorCode::kSchema, "frequency table N is below the sum of its counts");
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kSchema, std::string("malformed frequency table: ") + e.what());
  }
  return table;
}

std::pair<double, double> expected_frequencies(std::uint64_t observed_a, std::uint64_t observed_b,
                                               std::uint64_t total_a, std::uint64_t total_b) {
  if (total_a + total_b == 0) {
    fail(ErrorCode::kUndefinedExpected, "expected frequency undefined: both corpora are empty");
  }
  const double pooled = static_cast<double>(observed_a) + static_cast<double>(observed_b);
  const double n = static_cast<double>(total_a) + static_cast<double>(total_b);
  return {static_cast<double>(total_a) * pooled / n, static_cast<double>(total_b) * pooled / n};
}

KeynessEntry log_likelihood(std::string_view word, std::uint64_t observed_a,
                            std::uint64_t observed_b, std::uint64_t total_a,
                            std::uint64_t total_b) {
  if (observed_a == 0 && observed_b == 0) {
    fail(ErrorCode::kAbsentWord, "word '" + std::string(word) + "' occurs in neither corpus");
  }
  if (observed_a > total_a || observed_b > total_b) {
    fail(ErrorCode::kInvalidArgument,
         "observed count exceeds corpus total for '" + std::string(word) + "'");
  }
  KeynessEntry e;
  e.word = std::string(word);
  e.observed_a = observed_a;
  e.observed_b = observed_b;
  std::tie(e.expected_a, e.expected_b) =
      expected_frequencies(observed_a, observed_b, total_a, total_b);
  e.favored = compare_rates(observed_a, observed_b, total_a, total_b);
  if (e.favored == Favored::kNeither) {
    e.log_likelihood = 0.0;
  } else {
    const double ll = 2.0 * (cell(observed_a, e.expected_a) + cell(observed_b, e.expected_b));
    e.log_likelihood = ll > 0.0 ? ll : 0.0;
  }
  return e;
}

KeynessEntry log_likelihood(std::string_view word, const FrequencyTable& a,
                            const FrequencyTable& b) {
  const std::string w(word);
  return log_likelihood(word, a.count(w), b.count(w), a.total, b.total);
}

RankedKeywords rank_keywords(const FrequencyTable& a, const FrequencyTable& b, std::size_t top_k) {
  RankedKeywords out;
  std::vector<std::string> vocabulary;
  for (const auto& [w, n] : a.counts) {
    if (n > 0) vocabulary.push_back(w);
  }
  for (const auto& [w, n] : b.counts) {
    if (n > 0 && a.count(w) == 0) vocabulary.push_back(w);
  }
  for (const auto& w : vocabulary) {
    KeynessEntry e = log_likelihood(w, a, b);
    if (!(e.log_likelihood > 0.0)) continue;
    if (e.favored == Favored::kA) {
      out.favor_a.push_back(std::move(e));
    } else if (e.favored == Favored::kB) {
      out.favor_b.push_back(std::move(e));
    }
  }
  auto order = [](bool side_a) {
    return [side_a](const KeynessEntry& x, const KeynessEntry& y) {
      if (x.log_likelihood != y.log_likelihood) return x.log_likelihood > y.log_likelihood;
      const auto ox = side_a ? x.observed_a : x.observed_b;
      const auto oy = side_a ? y.observed_a : y.observed_b;
      if (ox != oy) return ox > oy;
      return x.word < y.word;
    };
  };
  std::sort(out.favor_a.begin(), out.favor_a.end(), order(true));
  std::sort(out.favor_b.begin(), out.favor_b.end(), order(false));
  if (top_k > 0) {
    if (out.favor_a.size() > top_k) out.favor_a.resize(top_k);
    if (out.favor_b.size() > top_k) out.favor_b.resize(top_k);
  }
  return out;
}

std::string keyness_csv(const RankedKeywords& ranked, std::string_view label_a,
                        std::string_view label_b) {
  std::string out = "word,O_A,O_B,E_A,E_B,LL,favored\n";
  auto row = [&](const KeynessEntry& e, std::string_view label) {
    std::string word = e.word;
    if (word.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : word) {
        if (c == '"') quoted.push_back('"');
        quoted.push_back(c);
      }
      word = quoted + "\"";
    }
    out += word + "," + std::to_string(e.observed_a) + "," + std::to_string(e.observed_b) + "," +
           text::format_fixed(e.expected_a, 4) + "," + text::format_fixed(e.expected_b, 4) + "," +
           text::format_fixed(e.log_likelihood, 4) + "," + std::string(label) + "\n";
  };
  for (const auto& e : ranked.favor_a) row(e, label_a);
  for (const auto& e : ranked.favor_b) row(e, label_b);
  return out;
}

}  // namespace cfp::keyness
