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

#include "probnetkat/interpreter.h"

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "probnetkat/error.h"
#include "probnetkat/syntax.h"

namespace probnetkat {

Program Approximant(const Program& p, std::uint32_t n) {
  if (ContainsSugar(p)) return Approximant(Desugar(p), n);
  switch (p.kind()) {
    case NodeKind::kDrop:
    case NodeKind::kSkip:
    case NodeKind::kTest:
    case NodeKind::kMod:
    case NodeKind::kDup:
      return p;
    case NodeKind::kNeg:
      return Program::Neg(Approximant(p.child(0), n));
    case NodeKind::kPar:
      return Program::Par(Approximant(p.child(0), n), Approximant(p.child(1), n));
    case NodeKind::kSeq:
      return Program::Seq(Approximant(p.child(0), n), Approximant(p.child(1), n));
    case NodeKind::kChoice:
      return Program::Choice(p.prob(), Approximant(p.child(0), n),
                             Approximant(p.child(1), n));
    case NodeKind::kStar:
      return Program::BoundedStar(n, Approximant(p.child(0), n));
    case NodeKind::kBoundedStar:
      return Program::BoundedStar(p.bound(), Approximant(p.child(0), n));
    case NodeKind::kIf:
    case NodeKind::kWhile:
      break;
  }
  throw Error(ErrorKind::kInternal, "sugar survived desugaring");
}

Program Unroll(const Program& p, std::uint32_t n) {
  Program acc = Program::Skip();
  for (std::uint32_t i = 0; i < n; ++i) {
    acc = Program::Par(Program::Skip(), Program::Seq(p, acc));
  }
  return acc;
}

Interpreter::Interpreter(FieldSchema schema) : schema_(std::move(schema)) {}

const Interpreter::CNode* Interpreter::Compile(const Program& program) {
  std::lock_guard<std::mutex> lock(compile_mu_);
  if (auto it = compiled_.find(program.id()); it != compiled_.end()) return it->second;
  Program p = ContainsSugar(program) ? Desugar(program) : program;
  Typecheck(p);
  if (ContainsStar(p)) {
    throw Error(ErrorKind::kApproximationRequired,
                "program contains an unbounded star; evaluate an approximant instead");
  }
  const CNode* root = CompileNode(p);
  roots_.push_back(p);
  if (!(p.id() == program.id())) {
    roots_.push_back(program);
    compiled_[program.id()] = root;
  }
  return root;
}

const Interpreter::CNode* Interpreter::CompileNode(const Program& p) {
  if (auto it = compiled_.find(p.id()); it != compiled_.end()) return it->second;
  auto node = std::make_unique<CNode>();
  node->kind = p.kind();
  if (p.kind() == NodeKind::kTest || p.kind() == NodeKind::kMod) {
    node->field = schema_.IndexOf(p.field());
    schema_.CheckValue(node->field, p.value());
    node->value = p.value();
  }
  node->prob = p.prob();
  node->bound = p.bound();
  node->deterministic = p.kind() != NodeKind::kChoice;
  for (const Program& c : p.children()) {
    const CNode* kid = CompileNode(c);
    node->kids.push_back(kid);
    node->deterministic = node->deterministic && kid->deterministic;
  }
  const CNode* raw = node.get();
  nodes_.push_back(std::move(node));
  compiled_.emplace(p.id(), raw);
  return raw;
}

Dist Interpreter::Eval(const Program& p, const HistSet& a) {
  return EvalNode(Compile(p), a);
}

Dist Interpreter::EvalDist(const Program& p, const Dist& mu) {
  const CNode* root = Compile(p);
  return Bind(mu, [&](const HistSet& a) { return EvalNode(root, a); });
}

HistSet Interpreter::EvalDeterministic(const Program& p, const HistSet& a) {
  const CNode* root = Compile(p);
  if (!root->deterministic) {
    throw Error(ErrorKind::kInvalidArgument,
                "deterministic evaluation of a program with probabilistic choice");
  }
  return EvalDet(root, a);
}

HistoryFunction Interpreter::AtomicAsFunction(const Program& p) {
  bool atomic = p.kind() == NodeKind::kDup || p.kind() == NodeKind::kMod;
  if (!atomic) {
    try {
      atomic = !ContainsSugar(p) && Typecheck(p) == Kind::kPredicate;
    } catch (const Error&) {
      atomic = false;
    }
  }
  if (!atomic) {
    throw Error(ErrorKind::kInvalidArgument,
                "'" + Print(p) + "' is not atomic (predicate, dup or modification)");
  }
  const CNode* root = Compile(p);
  switch (root->kind) {
    case NodeKind::kDup:
      return [](const History& h) -> std::optional<History> { return h.Dup(); };
    case NodeKind::kMod: {
      std::size_t field = root->field;
      FieldValue value = root->value;
      return [field, value](const History& h) -> std::optional<History> {
        return h.WithHead(h.head().With(field, value));
      };
    }
    default:
      return [this, root](const History& h) -> std::optional<History> {
        if (EvalDet(root, HistSet::Singleton(h)).empty()) return std::nullopt;
        return h;
      };
  }
}

HistSet Interpreter::EvalDet(const CNode* node, const HistSet& a) const {
  if (a.empty()) return a;
  switch (node->kind) {
    case NodeKind::kDrop:
      return HistSet();
    case NodeKind::kSkip:
      return a;
    case NodeKind::kTest: {
      std::vector<History> kept;
      for (const History& h : a) {
        if (h.head()[node->field] == node->value) kept.push_back(h);
      }
      return HistSet(std::move(kept));
    }
    case NodeKind::kNeg:
      return a.Difference(EvalDet(node->kids[0], a));
    case NodeKind::kMod: {
      std::vector<History> out;
      out.reserve(a.size());
      for (const History& h : a) out.push_back(h.WithHead(h.head().With(node->field, node->value)));
      return HistSet(std::move(out));
    }
    case NodeKind::kDup: {
      std::vector<History> out;
      out.reserve(a.size());
      for (const History& h : a) out.push_back(h.Dup());
      return HistSet(std::move(out));
    }
    case NodeKind::kPar:
      return EvalDet(node->kids[0], a).Union(EvalDet(node->kids[1], a));
    case NodeKind::kSeq:
      return EvalDet(node->kids[1], EvalDet(node->kids[0], a));
    case NodeKind::kBoundedStar: {
      HistSet acc = a;
      HistSet current = a;
      for (std::uint32_t i = 0; i < node->bound && !current.empty(); ++i) {
        current = EvalDet(node->kids[0], current);
        acc = acc.Union(current);
      }
      return acc;
    }
    case NodeKind::kChoice:
    case NodeKind::kStar:
    case NodeKind::kIf:
    case NodeKind::kWhile:
      break;
  }
  throw Error(ErrorKind::kInternal, "deterministic evaluation reached a non-deterministic node");
}

Dist Interpreter::EvalNode(const CNode* node, const HistSet& a) {
  // Every construct maps the empty input to the empty output.
  if (a.empty()) return Dist();
  if (node->deterministic) return Dirac(EvalDet(node, a));
  if (node->kind == NodeKind::kBoundedStar) return EvalStage(node->kids[0], node->bound, a);

  MemoKey key{node, 0, a};
  if (auto hit = Lookup(key)) return *std::move(hit);

  Dist result;
  switch (node->kind) {
    case NodeKind::kPar:
      result = Par(EvalNode(node->kids[0], a), EvalNode(node->kids[1], a));
      break;
    case NodeKind::kSeq: {
      const CNode* second = node->kids[1];
      result = Bind(EvalNode(node->kids[0], a),
                    [&](const HistSet& b) { return EvalNode(second, b); });
      break;
    }
    case NodeKind::kChoice:
      if (node->prob == 1) {
        result = EvalNode(node->kids[0], a);
      } else if (node->prob == 0) {
        result = EvalNode(node->kids[1], a);
      } else {
        result = Convex(node->prob, EvalNode(node->kids[0], a), EvalNode(node->kids[1], a));
      }
      break;
    case NodeKind::kNeg: {
      // Negation only applies to predicates, which are deterministic.
      throw Error(ErrorKind::kInternal, "negation of a probabilistic program");
    }
    default:
      throw Error(ErrorKind::kInternal, "unexpected node in probabilistic evaluation");
  }
  Store(std::move(key), result);
  return result;
}

// p^(k)(a) = δ_a & (⟦p⟧(a) >>= p^(k-1))
Dist Interpreter::EvalStage(const CNode* body, std::uint32_t stage, const HistSet& a) {
  if (stage == 0 || a.empty()) return Dirac(a);
  MemoKey key{body, stage, a};
  if (auto hit = Lookup(key)) return *std::move(hit);
  Dist rest = Bind(EvalNode(body, a),
                   [&](const HistSet& b) { return EvalStage(body, stage - 1, b); });
  DistBuilder builder;
  for (const auto& [s, w] : rest) builder.Add(a.Union(s), w);
  Dist result = std::move(builder).Build();
  Store(std::move(key), result);
  return result;
}

std::optional<Dist> Interpreter::Lookup(const MemoKey& key) const {
  std::lock_guard<std::mutex> lock(memo_mu_);
  auto it = memo_.find(key);
  if (it == memo_.end()) return std::nullopt;
  return it->second;
}

void Interpreter::Store(MemoKey key, const Dist& d) {
  std::lock_guard<std::mutex> lock(memo_mu_);
  memo_.try_emplace(std::move(key), d);
}

std::size_t Interpreter::memo_size() const {
  std::lock_guard<std::mutex> lock(memo_mu_);
  return memo_.size();
}

void Interpreter::ClearMemo() {
  std::lock_guard<std::mutex> lock(memo_mu_);
  memo_.clear();
}

}  // namespace probnetkat
