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
#include <optional>
#include <string>

#include "cfp/cache.hpp"
#include "cfp/date.hpp"
#include "cfp/http.hpp"

namespace cfp::simulate {

struct FrameworkSnapshot {
  Date as_of;               // requested date
  std::string source_url;
  std::string snapshot_url;
  std::string timestamp;    // 14-digit archive timestamp
  std::string description;

  Date snapshot_date() const;
};

std::string snapshot_to_json(const FrameworkSnapshot& snapshot);
FrameworkSnapshot snapshot_from_json(std::string_view text);

struct WaybackConfig {
  std::string api_url = "https://archive.org/wayback/available";
  std::string cache_dir;        // empty disables caching
  std::string extract_pattern;  // ECMAScript regex, capture group 1; empty = defaults
  int fallback_after_days = 14;
  int horizon_days = 3650;
  http::RetryPolicy retry;
};

// Default text extraction: <meta name="description">, then og:description,
// then the first non-empty <p>. Returns an empty string when nothing matches.
std::string extract_description(const std::string& html, const std::string& pattern);
std::string strip_html(std::string_view html);

class WaybackClient {
 public:
  WaybackClient(WaybackConfig config, http::Client& client);

  // Latest snapshot at or before as_of; if none exists within the horizon,
  // the earliest snapshot after as_of within fallback_after_days. Results are
  // cached by (source_url, as_of).
  FrameworkSnapshot fetch(const std::string& source_url, const Date& as_of);

  std::size_t network_requests() const { return requests_.load(); }

 private:
  struct Closest {
    std::string timestamp;
    std::string url;
    Date date;
  };
  std::optional<Closest> query(const std::string& source_url, const Date& probe);

  WaybackConfig config_;
  http::Client& client_;
  FileCache cache_;
  std::atomic<std::size_t> requests_{0};
};

}  // namespace cfp::simulate
