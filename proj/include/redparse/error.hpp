// Copyright 2026 The redparse Authors.
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

#ifndef REDPARSE_ERROR_HPP_
#define REDPARSE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace redparse {

// Failure categories. The C API maps each one to an rp_status code.
enum class ErrorKind {
  kInvalidArgument,
  kIo,
  kParse,       // malformed CoNLL-U, vocabulary, manifest or score lines
  kValidation,  // well-formed input that breaks a data invariant
  kFormat,      // binary embedding dump problems
  kAlignment,   // embedding rows do not line up with words
  kStructure,   // bracketing or tree invariants violated
  kMissing,     // a required sentence, span or table is absent
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace redparse

#endif  // REDPARSE_ERROR_HPP_
