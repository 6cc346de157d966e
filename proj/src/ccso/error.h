// Copyright 2026 The CCSO Filter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CCSO_ERROR_H_
#define CCSO_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ccso {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kConfig,
  kInput,
  kOutput,
  kParse,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the parameter parser. |bit_offset| is counted from the start of
// the buffer handed to the parser.
class ParseError : public Error {
 public:
  ParseError(size_t bit_offset, const std::string& message)
      : Error(ErrorCode::kParse, message + " at bit " +
                                     std::to_string(bit_offset)),
        bit_offset_(bit_offset) {}

  size_t bit_offset() const { return bit_offset_; }

 private:
  size_t bit_offset_;
};

}  // namespace ccso

#endif  // CCSO_ERROR_H_
