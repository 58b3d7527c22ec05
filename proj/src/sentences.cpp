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

#include <string>
#include <unordered_set>

#include "cfp/sentiment.hpp"
#include "cfp/text.hpp"

namespace cfp::sentiment {
namespace {

// Lower-cased tokens (without the final period) after which a period does not
// end a sentence.
const std::unordered_set<std::string>& abbreviations() {
  static const std::unordered_set<std::string> words = {
      "mr", "mrs", "ms", "dr", "prof", "st", "jr", "sr", "sen", "rep", "gov", "gen", "lt",
      "col", "sgt", "capt", "cpl", "cst", "insp", "supt", "det", "rev", "hon", "mt", "ft",
      "ave", "blvd", "rd", "vs", "inc", "corp", "ltd", "dept", "univ", "approx", "fig",
      "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept", "oct", "nov", "dec",
      "u.s", "u.k", "e.g", "i.e", "a.m", "p.m", "u.n", "b.c", "p.e.i", "n.w.t", "n.s",
      "n.b", "n.l", "ont", "que", "alta", "sask", "man"};
  return words;
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_closer(std::string_view s, std::size_t i, std::size_t& width) {
  const char c = s[i];
  if (c == '"' || c == '\'' || c == ')' || c == ']') {
    width = 1;
    return true;
  }
  // Right single and double quotation marks.
  if (s.compare(i, 3, "\xE2\x80\x99") == 0 || s.compare(i, 3, "\xE2\x80\x9D") == 0) {
    width = 3;
    return true;
  }
  return false;
}

bool is_space_at(std::string_view s, std::size_t i) {
  std::size_t j = i;
  return text::is_unicode_space(text::next_code_point(s, j));
}

// Word immediately before position `dot`, with opening brackets and quotes
// removed and lower-cased.
std::string word_before(std::string_view s, std::size_t dot) {
  std::size_t b = dot;
  while (b > 0 && !(static_cast<unsigned char>(s[b - 1]) < 0x80 &&
                    text::is_unicode_space(static_cast<unsigned char>(s[b - 1])))) {
    --b;
  }
  std::string_view w = s.substr(b, dot - b);
  while (!w.empty() && (w.front() == '(' || w.front() == '"' || w.front() == '\'' ||
                        w.front() == '[')) {
    w.remove_prefix(1);
  }
  return text::to_lower(w);
}

bool suppresses_break(std::string_view s, std::size_t run_start, std::size_t run_len,
                      std::size_t next) {
  if (run_len != 1 || s[run_start] != '.') return false;
  const std::string w = word_before(s, run_start);
  if (w.empty()) return false;
  if (abbreviations().count(w)) return true;
  // Single-letter initials such as "J." in "J. Smith".
  if (w.size() == 1 && w[0] >= 'a' && w[0] <= 'z') return true;
  // A following lower-case word or digit means the period was not final.
  if (next < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[next]);
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) return true;
  }
  return false;
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view body) {
  std::vector<std::string> out;
  auto emit = [&out](std::string_view piece) {
    std::string s = text::collapse_whitespace(piece);
    if (!s.empty()) out.push_back(std::move(s));
  };
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < body.size()) {
    if (!is_terminator(body[i])) {
      ++i;
      continue;
    }
    const std::size_t run_start = i;
    while (i < body.size() && is_terminator(body[i])) ++i;
    const std::size_t run_len = i - run_start;
    std::size_t width = 0;
    while (i < body.size() && is_closer(body, i, width)) i += width;
    const std::size_t end = i;
    if (end < body.size() && !is_space_at(body, end)) continue;
    std::size_t next = end;
    while (next < body.size() && is_space_at(body, next)) {
      text::next_code_point(body, next);
    }
    if (next >= body.size() || !suppresses_break(body, run_start, run_len, next)) {
      emit(body.substr(start, end - start));
      start = end;
    }
  }
  if (start < body.size()) emit(body.substr(start));
  return out;
}

}  // namespace cfp::sentiment
