// Copyright 2026 The groundseg Authors
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

#ifndef GROUNDSEG_ERROR_HPP_
#define GROUNDSEG_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace groundseg {

enum class ErrorKind {
  kIo,
  kMalformedFile,
  kRingOverflow,
  kDegeneratePoint,
  kMissingRing,
  kEmptyFrame,
  kState,
  kShape,
  kInvalidSeed,
  kIndex,
  kEmptyInput,
  kConfig,
  kDivergence,
  kFormat,
  kCorruption,
  kEmptyMask,
  kDegenerateTruth,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. The kind lets callers (the CLI, the
/// HTTP server) map errors onto exit codes and status codes without parsing
/// messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace groundseg

#endif  // GROUNDSEG_ERROR_HPP_
