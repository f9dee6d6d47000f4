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

#ifndef PROBNETKAT_CLI_H_
#define PROBNETKAT_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace probnetkat {

// Runs the command line `args` (without the program name) and returns the
// process exit code: 0 ok, 1 IO error, 2 language error (syntax, kind,
// schema, missing approximation bound, bad arguments), 3 capacity exceeded,
// 4 a verification that ran to completion and failed.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace probnetkat

#endif  // PROBNETKAT_CLI_H_
