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

// Concrete syntax for programs.
//
//   program  ::= choice ('&' choice)*
//   choice   ::= seq (chop seq)*
//   chop     ::= '+[' prob ']' | 'oplus' ['[' prob ']'] | '⊕' ['[' prob ']']
//   seq      ::= unary (';' unary)*
//   unary    ::= ('~' | '¬') unary | postfix
//   postfix  ::= primary ('*' | '^' nat)*
//   primary  ::= 'drop' | 'skip' | 'dup' | ident '=' nat | ident ':=' nat
//              | '(' program ')'
//              | 'if' program 'then' program 'else' unary
//              | 'while' program 'do' unary
//   prob     ::= nat '/' nat | decimal
//
// Binary operators associate to the left. `#` starts a line comment. A choice
// without an explicit probability (`p oplus q`, `p ⊕ q`) is weighted 1/2.

#ifndef PROBNETKAT_SYNTAX_H_
#define PROBNETKAT_SYNTAX_H_

#include <string>
#include <string_view>

#include "probnetkat/program.h"

namespace probnetkat {

// Throws ParseError (with line/column) on lexical or syntax errors, including
// probability literals outside [0,1].
Program Parse(std::string_view text);

// ASCII rendering with minimal parentheses; Parse(Print(p)) == p.
std::string Print(const Program& p);

}  // namespace probnetkat

#endif  // PROBNETKAT_SYNTAX_H_
