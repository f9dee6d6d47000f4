// Copyright 2026 The ProbNetKAT authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROBNETKAT_ERROR_H_
#define PROBNETKAT_ERROR_H_

#include <stdexcept>
#include <string>

namespace probnetkat {

enum class ErrorKind {
  kIo,
  kSyntax,
  kKind,
  kSchema,
  kApproximationRequired,
  kCapacity,
  kInvalidArgument,
  kTopology,
  kInternal,
};

// Process exit code used by the command-line tool for an error of `kind`:
// 1 for IO, 2 for language errors, 3 for capacity errors.
int ExitCodeFor(ErrorKind kind);

std::string ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Lexical or syntax error in program text, located at a 1-based line/column.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message);

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace probnetkat

#endif  // PROBNETKAT_ERROR_H_
