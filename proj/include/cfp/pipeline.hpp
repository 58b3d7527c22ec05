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

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cfp::http {
class Client;
}

// The ingest / measure / compare / generate workflows behind the CLI.
namespace cfp::pipeline {

using Options = std::map<std::string, std::string>;

// Option names each command accepts.
const std::vector<std::string>& known_options(std::string_view command);
bool is_known_option(std::string_view command, std::string_view key);

// Each command returns a JSON summary. Usage and schema problems throw
// kInvalidArgument / kSchema (exit status 2); everything else is a runtime
// failure (exit status 1).
std::string run_ingest(const Options& options);
std::string run_measure(const Options& options);
std::string run_compare(const Options& options);
// `client` overrides the live HTTP client (tests).
std::string run_generate(const Options& options, http::Client* client = nullptr);

std::string run_command(std::string_view command, const Options& options);

// Keys given in a TOML-like file: "key = value", '#' comments, optional
// [section] headers. Keys under [name] are returned as "name.key".
Options parse_config(std::string_view text);

inline constexpr std::string_view kVersion = "1.0.0";

}  // namespace cfp::pipeline
