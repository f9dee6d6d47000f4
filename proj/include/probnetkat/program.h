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

// Abstract syntax of ProbNetKAT programs.
//
//   t ::= drop | skip | f=n | t & t | t ; t | ~t
//   p ::= t | f:=n | dup | p & p | p ; p | p +[r] p | p* | p^n
//
// plus the conditional and while-loop sugar, which `Desugar` rewrites into
// core syntax. `p^n` (BoundedStar) is the n-th unrolling of p* and normally
// only appears in the output of `Approximant`.

#ifndef PROBNETKAT_PROGRAM_H_
#define PROBNETKAT_PROGRAM_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "probnetkat/packet.h"
#include "probnetkat/rational.h"

namespace probnetkat {

enum class NodeKind {
  kDrop,
  kSkip,
  kTest,
  kNeg,
  kMod,
  kDup,
  kPar,
  kSeq,
  kChoice,
  kStar,
  kBoundedStar,
  kIf,
  kWhile,
};

enum class Kind { kPredicate, kCommand };

class Program;
struct Node;

class Program {
 public:
  static Program Drop();
  static Program Skip();
  static Program Test(std::string field, FieldValue value);
  static Program Neg(Program p);
  static Program Mod(std::string field, FieldValue value);
  static Program Dup();
  static Program Par(Program p, Program q);
  static Program Seq(Program p, Program q);
  // p ⊕_r q; throws Error(kInvalidArgument) unless 0 <= r <= 1.
  static Program Choice(Rational r, Program p, Program q);
  static Program Star(Program p);
  static Program BoundedStar(std::uint32_t n, Program p);
  static Program If(Program cond, Program then_branch, Program else_branch);
  static Program While(Program cond, Program body);

  // Folds of the binary operators; an empty list yields drop (Par) or skip
  // (Seq).
  static Program ParAll(const std::vector<Program>& ps);
  static Program SeqAll(const std::vector<Program>& ps);
  // Weighted n-way choice encoded as right-nested binary choices:
  // p1 ⊕_{w1} (p2 ⊕_{w2/(1-w1)} (...)). Weights must be positive and sum to 1.
  static Program ChoiceAll(const std::vector<Program>& ps,
                           const std::vector<Rational>& weights);
  // Uniform n-way choice (weights 1/n, 1/(n-1), ... at successive heads).
  static Program UniformChoice(const std::vector<Program>& ps);

  NodeKind kind() const;
  const std::string& field() const;
  FieldValue value() const;
  const Rational& prob() const;
  std::uint32_t bound() const;
  const std::vector<Program>& children() const;
  const Program& child(std::size_t i) const { return children()[i]; }

  // Identity of the shared node; stable while any copy is alive.
  const Node* id() const { return node_.get(); }

  // Structural equality.
  friend bool operator==(const Program& a, const Program& b);

 private:
  explicit Program(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Node {
  NodeKind kind = NodeKind::kDrop;
  std::string field;
  FieldValue value = 0;
  Rational prob = 0;
  std::uint32_t bound = 0;
  std::vector<Program> children;
};

// Predicate iff built only from drop, skip, tests, &, ; and negation. Throws
// Error(kKind) naming the subterm when negation or a conditional guard is
// applied to a non-predicate.
Kind Typecheck(const Program& p);

// if a then p else q  ↦  a;p & ~a;q
// while a do p        ↦  (a;p)*;~a
// Throws Error(kKind) when a guard is not a predicate.
Program Desugar(const Program& p);

bool ContainsStar(const Program& p);
bool ContainsSugar(const Program& p);
std::size_t NodeCount(const Program& p);

}  // namespace probnetkat

#endif  // PROBNETKAT_PROGRAM_H_
