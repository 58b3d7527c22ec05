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

#include <stdexcept>
#include <string>
#include <string_view>

namespace cfp {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kSchema,
  kParse,
  kDegenerateDistribution,
  kUndefinedFocus,
  kUndefinedCorrelation,
  kUndefinedExpected,
  kAbsentWord,
  kAmbiguity,
  kTagger,
  kPrompt,
  kMissingFramework,
  kSnapshotNotFound,
  kExtraction,
  kTransport,
  kMalformedResponse,
  kGeneration,
  kLocked,
  kInternal,
};

std::string_view error_code_name(ErrorCode code);

// All recoverable failures in the library surface as cfp::Error. The C API
// maps the code onto a cfp_status value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace cfp
