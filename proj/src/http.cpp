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

#include "cfp/http.hpp"

#include <algorithm>
#include <cctype>
#include <thread>

#include "cfp/error.hpp"
#include "httplib.h"

namespace cfp::http {
namespace {

httplib::Client make_client(const Url& url, const LiveClientOptions& options) {
  httplib::Client client(url.scheme + "://" + url.host + ":" + std::to_string(url.port));
  client.set_connection_timeout(options.connect_timeout);
  client.set_read_timeout(options.read_timeout);
  client.set_follow_location(true);
  if (!options.bearer_token.empty()) client.set_bearer_token_auth(options.bearer_token);
  return client;
}

Response convert(const httplib::Result& result, const std::string& url) {
  if (!result) {
    fail(ErrorCode::kTransport, "request to " + url + " failed: " + httplib::to_string(result.error()));
  }
  return {result->status, result->body};
}

}  // namespace

Url parse_url(const std::string& url) {
  Url out;
  const auto sep = url.find("://");
  if (sep == std::string::npos) fail(ErrorCode::kInvalidArgument, "URL has no scheme: " + url);
  out.scheme = url.substr(0, sep);
  std::transform(out.scheme.begin(), out.scheme.end(), out.scheme.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (out.scheme != "http" && out.scheme != "https") {
    fail(ErrorCode::kInvalidArgument, "unsupported URL scheme: " + url);
  }
  const std::size_t host_begin = sep + 3;
  std::size_t path_begin = url.find_first_of("/?#", host_begin);
  std::string authority = url.substr(host_begin, path_begin == std::string::npos
                                                     ? std::string::npos
                                                     : path_begin - host_begin);
  if (authority.empty()) fail(ErrorCode::kInvalidArgument, "URL has no host: " + url);
  out.port = out.scheme == "https" ? 443 : 80;
  const auto colon = authority.rfind(':');
  if (colon != std::string::npos && authority.find(']') == std::string::npos) {
    const std::string port = authority.substr(colon + 1);
    if (port.empty() || port.find_first_not_of("0123456789") != std::string::npos ||
        port.size() > 5) {
      fail(ErrorCode::kInvalidArgument, "URL has an invalid port: " + url);
    }
    out.port = std::stoi(port);
    authority.resize(colon);
  }
  out.host = authority;
  out.path_and_query = path_begin == std::string::npos ? "/" : url.substr(path_begin);
  if (out.path_and_query.front() != '/') out.path_and_query.insert(0, "/");
  const auto hash = out.path_and_query.find('#');
  if (hash != std::string::npos) out.path_and_query.resize(hash);
  return out;
}

std::string percent_encode(const std::string& value) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : value) {
    if (std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 15]);
    }
  }
  return out;
}

Response LiveClient::get(const std::string& url) {
  const Url u = parse_url(url);
  auto client = make_client(u, options_);
  return convert(client.Get(u.path_and_query), url);
}

Response LiveClient::post_json(const std::string& url, const std::string& body) {
  const Url u = parse_url(url);
  auto client = make_client(u, options_);
  return convert(client.Post(u.path_and_query, body, "application/json"), url);
}

Response with_retries(const RetryPolicy& policy, const std::function<Response()>& call,
                      const std::function<void(std::chrono::milliseconds)>& sleep) {
  const int attempts = std::max(1, policy.attempts);
  auto backoff = policy.initial_backoff;
  std::string last_problem;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    try {
      Response r = call();
      if (r.status != 429 && r.status < 500) return r;
      last_problem = "HTTP status " + std::to_string(r.status);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kTransport) throw;
      last_problem = e.what();
    }
    if (attempt == attempts) break;
    if (sleep) {
      sleep(backoff);
    } else {
      std::this_thread::sleep_for(backoff);
    }
    const auto next = std::chrono::milliseconds(
        static_cast<long long>(static_cast<double>(backoff.count()) * policy.multiplier));
    backoff = std::min(next, policy.max_backoff);
  }
  fail(ErrorCode::kTransport,
       "giving up after " + std::to_string(attempts) + " attempts: " + last_problem);
}

}  // namespace cfp::http
