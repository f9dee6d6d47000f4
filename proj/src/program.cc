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

#include "probnetkat/program.h"

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "probnetkat/error.h"
#include "probnetkat/syntax.h"

namespace probnetkat {
namespace {

Node Blank(NodeKind kind) {
  Node n;
  n.kind = kind;
  return n;
}

}  // namespace
Program Program::Drop() { return Program(std::make_shared<const Node>(Blank(NodeKind::kDrop))); }
Program Program::Skip() { return Program(std::make_shared<const Node>(Blank(NodeKind::kSkip))); }
Program Program::Dup() { return Program(std::make_shared<const Node>(Blank(NodeKind::kDup))); }

Program Program::Test(std::string field, FieldValue value) {
  Node n = Blank(NodeKind::kTest);
  n.field = std::move(field);
  n.value = value;
  return Program(std::make_shared<const Node>(std::move(n)));
}

Program Program::Mod(std::string field, FieldValue value) {
  Node n = Blank(NodeKind::kMod);
  n.field = std::move(field);
  n.value = value;
  return Program(std::make_shared<const Node>(std::move(n)));
}

Program Program::Neg(Program p) {
  Node n = Blank(NodeKind::kNeg);
  n.children = {std::move(p)};
  return Program(std::make_shared<const Node>(std::move(n)));
}

Program Program::Par(Program p, Program q) {
  Node n = Blank(NodeKind::kPar);
  n.children = {std::move(p), std::move(q)};
  return Program(std::make_shared<const Node>(std::move(n)));
}

Program Program::Seq(Program p, Program q) {
  Node n = Blank(NodeKind::kSeq);
  n.children = {std::move(p), std::move(q)};
  return Program(std::make_shared<const Node>(std::move(n)));
}

Program Program::Choice(Rational r, Program p, Program q) {
  if (!InUnitInterval(r)) {
    throw Error(ErrorKind::kInvalidArgument,
                "choice probability " + FormatFraction(r) + " outside [0,1]");
  }
  Node n = Blank(NodeKind::kChoice);
  n.prob = std::move(r);
  n.children = {std::move(p), std::move(q)};
  return Program(std::make_shared<const Node>(std::move(n)));
}

Program Program::Star(Program p) {
  Node n = Blank(NodeKind::kStar);
  n.children = {std::move(p)};
  return Program(std::make_shared<const Node>(std::move(n)));
}

Program Program::BoundedStar(std::uint32_t bound, Program p) {
  Node n = Blank(NodeKind::kBoundedStar);
  n.bound = bound;
  n.children = {std::move(p)};
  return Program(std::make_shared<const Node>(std::move(n)));
}

Program Program::If(Program cond, Program then_branch, Program else_branch) {
  Node n = Blank(NodeKind::kIf);
  n.children = {std::move(cond), std::move(then_branch), std::move(else_branch)};
  return Program(std::make_shared<const Node>(std::move(n)));
}

Program Program::While(Program cond, Program body) {
  Node n = Blank(NodeKind::kWhile);
  n.children = {std::move(cond), std::move(body)};
  return Program(std::make_shared<const Node>(std::move(n)));
}

Program Program::ParAll(const std::vector<Program>& ps) {
  if (ps.empty()) return Drop();
  Program acc = ps.front();
  for (std::size_t i = 1; i < ps.size(); ++i) acc = Par(acc, ps[i]);
  return acc;
}

Program Program::SeqAll(const std::vector<Program>& ps) {
  if (ps.empty()) return Skip();
  Program acc = ps.front();
  for (std::size_t i = 1; i < ps.size(); ++i) acc = Seq(acc, ps[i]);
  return acc;
}

Program Program::ChoiceAll(const std::vector<Program>& ps,
                           const std::vector<Rational>& weights) {
  if (ps.empty() || ps.size() != weights.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "weighted choice needs one positive weight per branch");
  }
  Rational total = 0;
  for (const Rational& w : weights) {
    if (w <= 0) {
      throw Error(ErrorKind::kInvalidArgument, "choice weights must be positive");
    }
    total += w;
  }
  if (total != 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "choice weights sum to " + FormatFraction(total) + ", not 1");
  }
  // Build from the tail: the suffix starting at i carries mass `remaining`.
  Program acc = ps.back();
  Rational remaining = weights.back();
  for (std::size_t i = ps.size() - 1; i-- > 0;) {
    remaining += weights[i];
    acc = Choice(weights[i] / remaining, ps[i], acc);
  }
  return acc;
}

Program Program::UniformChoice(const std::vector<Program>& ps) {
  std::vector<Rational> weights(ps.size(), Rational(1, ps.empty() ? 1 : ps.size()));
  for (Rational& w : weights) w.canonicalize();
  return ChoiceAll(ps, weights);
}

NodeKind Program::kind() const { return node_->kind; }
const std::string& Program::field() const { return node_->field; }
FieldValue Program::value() const { return node_->value; }
const Rational& Program::prob() const { return node_->prob; }
std::uint32_t Program::bound() const { return node_->bound; }
const std::vector<Program>& Program::children() const { return node_->children; }

bool operator==(const Program& a, const Program& b) {
  if (a.node_ == b.node_) return true;
  const Node& x = *a.node_;
  const Node& y = *b.node_;
  if (x.kind != y.kind || x.field != y.field || x.value != y.value ||
      x.prob != y.prob || x.bound != y.bound ||
      x.children.size() != y.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    if (!(x.children[i] == y.children[i])) return false;
  }
  return true;
}

namespace {

[[noreturn]] void NotAPredicate(const Program& p, const char* context) {
  throw Error(ErrorKind::kKind, std::string(context) +
                                    " requires a predicate, got '" + Print(p) +
                                    "'");
}

}  // namespace

Kind Typecheck(const Program& p) {
  switch (p.kind()) {
    case NodeKind::kDrop:
    case NodeKind::kSkip:
    case NodeKind::kTest:
      return Kind::kPredicate;
    case NodeKind::kMod:
    case NodeKind::kDup:
      return Kind::kCommand;
    case NodeKind::kNeg:
      if (Typecheck(p.child(0)) != Kind::kPredicate) NotAPredicate(p.child(0), "negation");
      return Kind::kPredicate;
    case NodeKind::kPar:
    case NodeKind::kSeq: {
      Kind a = Typecheck(p.child(0));
      Kind b = Typecheck(p.child(1));
      return a == Kind::kPredicate && b == Kind::kPredicate ? Kind::kPredicate
                                                            : Kind::kCommand;
    }
    case NodeKind::kChoice:
      Typecheck(p.child(0));
      Typecheck(p.child(1));
      return Kind::kCommand;
    case NodeKind::kStar:
    case NodeKind::kBoundedStar:
      Typecheck(p.child(0));
      return Kind::kCommand;
    case NodeKind::kIf: {
      if (Typecheck(p.child(0)) != Kind::kPredicate) NotAPredicate(p.child(0), "if-guard");
      Kind a = Typecheck(p.child(1));
      Kind b = Typecheck(p.child(2));
      return a == Kind::kPredicate && b == Kind::kPredicate ? Kind::kPredicate
                                                            : Kind::kCommand;
    }
    case NodeKind::kWhile:
      if (Typecheck(p.child(0)) != Kind::kPredicate) NotAPredicate(p.child(0), "while-guard");
      Typecheck(p.child(1));
      return Kind::kCommand;
  }
  throw Error(ErrorKind::kInternal, "unknown node kind");
}

Program Desugar(const Program& p) {
  switch (p.kind()) {
    case NodeKind::kDrop:
    case NodeKind::kSkip:
    case NodeKind::kTest:
    case NodeKind::kMod:
    case NodeKind::kDup:
      return p;
    case NodeKind::kNeg:
      return Program::Neg(Desugar(p.child(0)));
    case NodeKind::kPar:
      return Program::Par(Desugar(p.child(0)), Desugar(p.child(1)));
    case NodeKind::kSeq:
      return Program::Seq(Desugar(p.child(0)), Desugar(p.child(1)));
    case NodeKind::kChoice:
      return Program::Choice(p.prob(), Desugar(p.child(0)), Desugar(p.child(1)));
    case NodeKind::kStar:
      return Program::Star(Desugar(p.child(0)));
    case NodeKind::kBoundedStar:
      return Program::BoundedStar(p.bound(), Desugar(p.child(0)));
    case NodeKind::kIf: {
      Program guard = Desugar(p.child(0));
      if (Typecheck(guard) != Kind::kPredicate) NotAPredicate(p.child(0), "if-guard");
      return Program::Par(Program::Seq(guard, Desugar(p.child(1))),
                          Program::Seq(Program::Neg(guard), Desugar(p.child(2))));
    }
    case NodeKind::kWhile: {
      Program guard = Desugar(p.child(0));
      if (Typecheck(guard) != Kind::kPredicate) NotAPredicate(p.child(0), "while-guard");
      return Program::Seq(Program::Star(Program::Seq(guard, Desugar(p.child(1)))),
                          Program::Neg(guard));
    }
  }
  throw Error(ErrorKind::kInternal, "unknown node kind");
}

bool ContainsStar(const Program& p) {
  if (p.kind() == NodeKind::kStar || p.kind() == NodeKind::kWhile) return true;
  for (const Program& c : p.children()) {
    if (ContainsStar(c)) return true;
  }
  return false;
}

bool ContainsSugar(const Program& p) {
  if (p.kind() == NodeKind::kIf || p.kind() == NodeKind::kWhile) return true;
  for (const Program& c : p.children()) {
    if (ContainsSugar(c)) return true;
  }
  return false;
}

std::size_t NodeCount(const Program& p) {
  std::size_t n = 1;
  for (const Program& c : p.children()) n += NodeCount(c);
  return n;
}

}  // namespace probnetkat
