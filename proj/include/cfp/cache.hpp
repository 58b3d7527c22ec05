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

#include <optional>
#include <string>
#include <string_view>

namespace cfp {

// Content-addressed file store: <root>/<namespace>/<k0k1>/<key>.json.
// Writes go to a temporary file first and are renamed into place.
class FileCache {
 public:
  FileCache() = default;
  FileCache(std::string root, std::string name_space);

  bool enabled() const { return !root_.empty(); }
  std::optional<std::string> load(std::string_view key) const;
  void store(std::string_view key, std::string_view contents) const;
  std::string path_for(std::string_view key) const;
  const std::string& directory() const { return dir_; }

 private:
  std::string root_;
  std::string dir_;
};

}  // namespace cfp
