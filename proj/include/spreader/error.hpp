// Copyright 2026 The Spreader Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPREADER_ERROR_HPP_
#define SPREADER_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace spreader {

enum class ErrorCode {
  // corpus_io
  kMalformedXml,
  kInvalidAuthorId,
  kEmptyAuthor,
  kMalformedTruthLine,
  kDuplicateAuthorId,
  kMissingAuthorFile,
  kUnlabeledAuthor,
  kUnlabeledCorpus,
  kDegenerateSplit,
  kIoError,
  // vectorize
  kInvalidConfig,
  kEmptyVocabulary,
  // models
  kSingleClassInput,
  kDimensionMismatch,
  kWrongModelKind,
  kUnsupportedVersion,
  kCorruptModelFile,
  // evaluation
  kLengthMismatch,
  kEmptyMatrix,
  kEmptyGrid,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedXml: return "MalformedXml";
    case ErrorCode::kInvalidAuthorId: return "InvalidAuthorId";
    case ErrorCode::kEmptyAuthor: return "EmptyAuthor";
    case ErrorCode::kMalformedTruthLine: return "MalformedTruthLine";
    case ErrorCode::kDuplicateAuthorId: return "DuplicateAuthorId";
    case ErrorCode::kMissingAuthorFile: return "MissingAuthorFile";
    case ErrorCode::kUnlabeledAuthor: return "UnlabeledAuthor";
    case ErrorCode::kUnlabeledCorpus: return "UnlabeledCorpus";
    case ErrorCode::kDegenerateSplit: return "DegenerateSplit";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kEmptyVocabulary: return "EmptyVocabulary";
    case ErrorCode::kSingleClassInput: return "SingleClassInput";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kWrongModelKind: return "WrongModelKind";
    case ErrorCode::kUnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::kCorruptModelFile: return "CorruptModelFile";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptyMatrix: return "EmptyMatrix";
    case ErrorCode::kEmptyGrid: return "EmptyGrid";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spreader

#endif  // SPREADER_ERROR_HPP_
