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
#include <string>
#include <string_view>
#include <vector>

namespace cfp::csv {

struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based physical line where the record starts
  bool unterminated = false;
};

// RFC 4180 reader: comma separated, double-quote quoting with "" escapes,
// embedded newlines inside quotes, CRLF or LF record ends. A leading UTF-8
// BOM is skipped. Blank lines are ignored.
std::vector<Record> parse(std::string_view data);

std::string escape_field(std::string_view field);
std::string format_row(const std::vector<std::string>& fields);

}  // namespace cfp::csv
