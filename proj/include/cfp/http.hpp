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

#include <chrono>
#include <functional>
#include <string>

namespace cfp::http {

struct Response {
  int status = 0;
  std::string body;
};

// Blocking HTTP client. Implementations throw Error(kTransport) when no
// response was received at all; HTTP error statuses are returned as-is.
class Client {
 public:
  virtual ~Client() = default;
  virtual Response get(const std::string& url) = 0;
  virtual Response post_json(const std::string& url, const std::string& body) = 0;
};

struct LiveClientOptions {
  std::chrono::seconds connect_timeout{10};
  std::chrono::seconds read_timeout{300};
  std::string bearer_token;  // sent as Authorization when non-empty
};

class LiveClient final : public Client {
 public:
  LiveClient() = default;
  explicit LiveClient(LiveClientOptions options) : options_(std::move(options)) {}
  Response get(const std::string& url) override;
  Response post_json(const std::string& url, const std::string& body) override;

 private:
  LiveClientOptions options_;
};

struct Url {
  std::string scheme;  // "http" or "https"
  std::string host;
  int port = 0;
  std::string path_and_query;  // begins with '/'
};
Url parse_url(const std::string& url);  // throws kInvalidArgument
std::string percent_encode(const std::string& value);

struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  double multiplier = 2.0;
  std::chrono::milliseconds max_backoff{8000};
};

// Retries transport failures, 429 and 5xx responses with exponential backoff.
// Other statuses are returned to the caller. Throws the last kTransport error
// or Error(kTransport) describing the last retryable status once attempts run
// out.
Response with_retries(const RetryPolicy& policy, const std::function<Response()>& call,
                      const std::function<void(std::chrono::milliseconds)>& sleep = {});

}  // namespace cfp::http
