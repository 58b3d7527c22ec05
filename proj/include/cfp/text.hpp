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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// UTF-8 and string helpers shared across modules.
namespace cfp::text {

bool is_valid_utf8(std::string_view s);

// Decodes one code point starting at s[i]; advances i. Invalid bytes decode
// as U+FFFD and advance by one.
char32_t next_code_point(std::string_view s, std::size_t& i);
void append_utf8(std::string& out, char32_t cp);
std::size_t code_point_count(std::string_view s);

// Whitespace as understood by Python's str.split() with no arguments.
bool is_unicode_space(char32_t cp);
std::vector<std::string_view> split_whitespace(std::string_view s);
std::string_view strip_unicode_space(std::string_view s);

// Collapses every whitespace run to one ASCII space and trims both ends.
std::string collapse_whitespace(std::string_view s);

// Lower-casing over ASCII and Latin-1 letters; other code points unchanged.
std::string to_lower(std::string_view s);
char32_t lower_code_point(char32_t cp);
bool is_cased_upper(char32_t cp);
bool is_cased_lower(char32_t cp);
// Python str.isupper(): at least one cased character and none lower-case.
bool is_upper_word(std::string_view s);

bool is_ascii_punct(char c);
bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);
std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char delim);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Hex-encoded SHA-256 digest.
std::string sha256_hex(std::string_view data);

// Formats with printf-style "%.*f" rounding (correctly rounded, ties per the
// exact binary value), then parses back.
double round_to(double value, int decimals);
std::string format_fixed(double value, int decimals);

std::string read_file(const std::string& path);  // throws kIo
void write_file_atomic(const std::string& path, std::string_view contents);

}  // namespace cfp::text
