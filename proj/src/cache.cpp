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

#include "cfp/cache.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cfp/error.hpp"
#include "cfp/text.hpp"

namespace cfp {

namespace fs = std::filesystem;

FileCache::FileCache(std::string root, std::string name_space) : root_(std::move(root)) {
  if (!root_.empty()) dir_ = (fs::path(root_) / name_space).string();
}

std::string FileCache::path_for(std::string_view key) const {
  if (key.size() < 3 || key.find_first_of("/\\.") != std::string_view::npos) {
    fail(ErrorCode::kInvalidArgument, "invalid cache key '" + std::string(key) + "'");
  }
  return (fs::path(dir_) / std::string(key.substr(0, 2)) / (std::string(key) + ".json")).string();
}

std::optional<std::string> FileCache::load(std::string_view key) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(path_for(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void FileCache::store(std::string_view key, std::string_view contents) const {
  if (!enabled()) return;
  const std::string path = path_for(key);
  std::error_code ec;
  fs::create_directories(fs::path(path).parent_path(), ec);
  if (ec) fail(ErrorCode::kIo, "cannot create cache directory for " + path + ": " + ec.message());
  text::write_file_atomic(path, contents);
}

}  // namespace cfp
