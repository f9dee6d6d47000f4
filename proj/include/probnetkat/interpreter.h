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

// The denotational interpreter: every program denotes a Markov kernel from
// history sets to finite distributions over history sets.
//
//   drop       ↦ δ_∅
//   skip       ↦ δ_a
//   f=n        ↦ δ_{h ∈ a | head(h).f = n}
//   ~t         ↦ ⟦t⟧(a) >>= λb. δ_{a−b}
//   f:=n       ↦ δ_{π[f:=n]::σ | π::σ ∈ a}
//   dup        ↦ δ_{π::π::σ | π::σ ∈ a}
//   p & q      ↦ ⟦p⟧(a) & ⟦q⟧(a)
//   p ; q      ↦ ⟦p⟧(a) >>= ⟦q⟧
//   p +[r] q   ↦ r·⟦p⟧(a) + (1−r)·⟦q⟧(a)
//   p^n        ↦ ⟦p^(n)⟧ with p^(0) = skip, p^(n+1) = skip & p;p^(n)
//
// Unbounded star is never evaluated; rewrite it with Approximant first.

#ifndef PROBNETKAT_INTERPRETER_H_
#define PROBNETKAT_INTERPRETER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "probnetkat/dist.h"
#include "probnetkat/packet.h"
#include "probnetkat/program.h"

namespace probnetkat {

// [p]_n: every q* becomes ([q]_n)^n; all other constructs map structurally.
// Conditional and while sugar is expanded first.
Program Approximant(const Program& p, std::uint32_t n);

// The explicit star-free program p^(n) = skip & p;p^(n-1), p^(0) = skip.
Program Unroll(const Program& p, std::uint32_t n);

// Partial function on histories realizing an atomic program (a predicate,
// dup, or a modification); std::nullopt where undefined.
using HistoryFunction = std::function<std::optional<History>(const History&)>;

class Interpreter {
 public:
  explicit Interpreter(FieldSchema schema);

  Interpreter(const Interpreter&) = delete;
  Interpreter& operator=(const Interpreter&) = delete;

  const FieldSchema& schema() const { return schema_; }

  // ⟦p⟧(a). Throws Error(kApproximationRequired) if p contains an unbounded
  // star, Error(kKind) if p does not typecheck and Error(kSchema) for fields
  // or values the schema does not declare.
  Dist Eval(const Program& p, const HistSet& a);

  // μ >>= ⟦p⟧
  Dist EvalDist(const Program& p, const Dist& mu);

  // Evaluation in the identity monad; p must be free of probabilistic choice.
  HistSet EvalDeterministic(const Program& p, const HistSet& a);

  // f_p with ⟦p⟧(a) = δ_{f_p(h) | h ∈ a}. Throws Error(kInvalidArgument) for
  // non-atomic programs.
  HistoryFunction AtomicAsFunction(const Program& p);

  std::size_t memo_size() const;
  void ClearMemo();

 private:
  struct CNode {
    NodeKind kind;
    std::size_t field = 0;
    FieldValue value = 0;
    Rational prob;
    std::uint32_t bound = 0;
    std::vector<const CNode*> kids;
    bool deterministic = true;
  };

  struct MemoKey {
    const CNode* node;
    std::uint32_t stage;
    HistSet set;
    bool operator==(const MemoKey&) const = default;
  };
  struct MemoKeyHash {
    std::size_t operator()(const MemoKey& k) const {
      return k.set.Hash() ^
             (reinterpret_cast<std::size_t>(k.node) * 0x9e3779b97f4a7c15ULL) ^
             (static_cast<std::size_t>(k.stage) << 32);
    }
  };

  const CNode* Compile(const Program& p);
  const CNode* CompileNode(const Program& p);

  Dist EvalNode(const CNode* node, const HistSet& a);
  Dist EvalStage(const CNode* body, std::uint32_t stage, const HistSet& a);
  HistSet EvalDet(const CNode* node, const HistSet& a) const;

  std::optional<Dist> Lookup(const MemoKey& key) const;
  void Store(MemoKey key, const Dist& d);

  FieldSchema schema_;
  // Compiled nodes never move; evaluation only follows their kid pointers.
  std::vector<std::unique_ptr<CNode>> nodes_;
  // Keeps compiled AST nodes alive so their addresses stay unique.
  std::vector<Program> roots_;
  std::unordered_map<const Node*, const CNode*> compiled_;
  mutable std::mutex compile_mu_;

  mutable std::mutex memo_mu_;
  std::unordered_map<MemoKey, Dist, MemoKeyHash> memo_;
};

}  // namespace probnetkat

#endif  // PROBNETKAT_INTERPRETER_H_
