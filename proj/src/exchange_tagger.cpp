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

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include "json.hpp"

#include "cfp/entities.hpp"
#include "cfp/error.hpp"
#include "cfp/text.hpp"

namespace cfp::entities {
namespace {

[[noreturn]] void bad_line(std::string_view line, const std::string& why) {
  std::string quoted(line.substr(0, 400));
  if (line.size() > 400) quoted += "...";
  fail(ErrorCode::kTagger, "malformed tagger response (" + why + "): " + quoted);
}

void write_all(int fd, std::string_view data) {
  while (!data.empty()) {
    ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      fail(ErrorCode::kTagger, std::string("cannot write to tagger process: ") + std::strerror(errno));
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

}  // namespace

std::string exchange_request(std::string_view article_id, std::string_view text_value) {
  nlohmann::ordered_json j;
  j["article_id"] = std::string(article_id);
  j["text"] = std::string(text_value);
  return j.dump();
}

std::string exchange_response(std::string_view article_id,
                              const std::vector<EntityMention>& mentions) {
  nlohmann::ordered_json j;
  j["article_id"] = std::string(article_id);
  j["mentions"] = nlohmann::ordered_json::array();
  for (const auto& m : mentions) {
    nlohmann::ordered_json jm;
    jm["surface"] = m.surface;
    jm["kind"] = std::string(kind_name(m.kind));
    jm["start"] = m.start;
    jm["end"] = m.end;
    j["mentions"].push_back(std::move(jm));
  }
  return j.dump();
}

std::pair<std::string, std::vector<EntityMention>> parse_exchange_response(
    std::string_view line, std::size_t token_count) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception&) {
    bad_line(line, "not JSON");
  }
  if (!j.is_object()) bad_line(line, "not an object");
  if (!j.contains("article_id") || !j["article_id"].is_string()) bad_line(line, "missing article_id");
  if (!j.contains("mentions") || !j["mentions"].is_array()) bad_line(line, "missing mentions");
  std::vector<EntityMention> mentions;
  for (const auto& jm : j["mentions"]) {
    if (!jm.is_object() || !jm.contains("surface") || !jm["surface"].is_string() ||
        !jm.contains("kind") || !jm["kind"].is_string() || !jm.contains("start") ||
        !jm["start"].is_number_integer() || !jm.contains("end") ||
        !jm["end"].is_number_integer()) {
      bad_line(line, "mention needs surface, kind, start and end");
    }
    const long long start = jm["start"].get<long long>();
    const long long end = jm["end"].get<long long>();
    if (start < 0 || end <= start || static_cast<std::size_t>(end) > token_count) {
      bad_line(line, "span outside the article's " + std::to_string(token_count) + " tokens");
    }
    EntityKind kind;
    if (!parse_kind(jm["kind"].get<std::string>(), kind)) continue;
    mentions.push_back({jm["surface"].get<std::string>(), kind, static_cast<std::size_t>(start),
                        static_cast<std::size_t>(end)});
  }
  return {j["article_id"].get<std::string>(), std::move(mentions)};
}

FileExchangeTagger::FileExchangeTagger(const std::string& response_path) {
  std::ifstream in(response_path);
  if (!in) fail(ErrorCode::kIo, "cannot open tagger responses " + response_path);
  std::string line;
  while (std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      bad_line(line, "not JSON");
    }
    if (!j.is_object() || !j.contains("article_id") || !j["article_id"].is_string()) {
      bad_line(line, "missing article_id");
    }
    lines_[j["article_id"].get<std::string>()].push_back(line);
  }
}

std::vector<EntityMention> FileExchangeTagger::tag(std::string_view article_id,
                                                   std::string_view text_value) {
  auto it = lines_.find(std::string(article_id));
  if (it == lines_.end()) {
    fail(ErrorCode::kTagger, "tagger responses have no entry for article " + std::string(article_id));
  }
  return parse_exchange_response(it->second.front(), token_length(text_value)).second;
}

ProcessExchangeTagger::ProcessExchangeTagger(const std::string& command) {
  int in_pipe[2];
  int out_pipe[2];
  if (::pipe(in_pipe) != 0) fail(ErrorCode::kTagger, "pipe() failed");
  if (::pipe(out_pipe) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    fail(ErrorCode::kTagger, "pipe() failed");
  }
  pid_ = ::fork();
  if (pid_ < 0) fail(ErrorCode::kTagger, "cannot start tagger process");
  if (pid_ == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  ::fcntl(to_child_, F_SETFD, FD_CLOEXEC);
  ::fcntl(from_child_, F_SETFD, FD_CLOEXEC);
  // A dead child must surface as an error, not a SIGPIPE.
  ::signal(SIGPIPE, SIG_IGN);
}

ProcessExchangeTagger::~ProcessExchangeTagger() {
  if (to_child_ >= 0) ::close(to_child_);
  if (from_child_ >= 0) ::close(from_child_);
  if (pid_ > 0) {
    int status = 0;
    ::waitpid(pid_, &status, 0);
  }
}

std::string ProcessExchangeTagger::read_line() {
  for (;;) {
    auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    char chunk[4096];
    ssize_t n = ::read(from_child_, chunk, sizeof chunk);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) fail(ErrorCode::kTagger, "tagger process closed its output");
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

std::vector<EntityMention> ProcessExchangeTagger::tag(std::string_view article_id,
                                                      std::string_view text_value) {
  std::lock_guard<std::mutex> lock(mutex_);
  write_all(to_child_, exchange_request(article_id, text_value) + "\n");
  std::string line = read_line();
  auto [id, mentions] = parse_exchange_response(line, token_length(text_value));
  if (id != article_id) bad_line(line, "article_id does not match the request");
  return mentions;
}

}  // namespace cfp::entities
