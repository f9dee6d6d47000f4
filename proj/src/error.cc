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

#include "probnetkat/error.h"

#include <string>

namespace probnetkat {

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo:
      return 1;
    case ErrorKind::kCapacity:
      return 3;
    default:
      return 2;
  }
}

std::string ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo:
      return "io error";
    case ErrorKind::kSyntax:
      return "syntax error";
    case ErrorKind::kKind:
      return "kind error";
    case ErrorKind::kSchema:
      return "schema error";
    case ErrorKind::kApproximationRequired:
      return "approximation required";
    case ErrorKind::kCapacity:
      return "capacity error";
    case ErrorKind::kInvalidArgument:
      return "invalid argument";
    case ErrorKind::kTopology:
      return "topology error";
    case ErrorKind::kInternal:
      return "internal error";
  }
  return "error";
}

ParseError::ParseError(int line, int column, const std::string& message)
    : Error(ErrorKind::kSyntax, std::to_string(line) + ":" +
                                    std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace probnetkat
