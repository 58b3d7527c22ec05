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

#include "cfp/error.hpp"

namespace cfp {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kDegenerateDistribution: return "degenerate-distribution";
    case ErrorCode::kUndefinedFocus: return "undefined-focus";
    case ErrorCode::kUndefinedCorrelation: return "undefined-correlation";
    case ErrorCode::kUndefinedExpected: return "undefined-expected";
    case ErrorCode::kAbsentWord: return "absent-word";
    case ErrorCode::kAmbiguity: return "ambiguity";
    case ErrorCode::kTagger: return "tagger";
    case ErrorCode::kPrompt: return "prompt";
    case ErrorCode::kMissingFramework: return "missing-framework";
    case ErrorCode::kSnapshotNotFound: return "snapshot-not-found";
    case ErrorCode::kExtraction: return "extraction";
    case ErrorCode::kTransport: return "transport";
    case ErrorCode::kMalformedResponse: return "malformed-response";
    case ErrorCode::kGeneration: return "generation";
    case ErrorCode::kLocked: return "locked";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

}  // namespace cfp
