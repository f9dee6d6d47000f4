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

// Finite-instance measure theory on history sets.
//
// For a finite set of histories b, the basic Scott-open sets are
// B_a = {c | a ⊆ c} and the atoms of the Boolean algebra they generate are
// A_ab = {c | c ∩ b = a} for a ⊆ b. Vectors and matrices indexed by the
// subsets of b use binary counting over the canonically ordered basis: bit i
// of an index says whether the i-th history of b is present. With that
// indexing E[b] (E_ac = [a ⊆ c]) is the Kronecker product of one 2×2 block
// per basis element, the last element contributing the leftmost factor.

#ifndef PROBNETKAT_MEASURE_H_
#define PROBNETKAT_MEASURE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "probnetkat/dist.h"
#include "probnetkat/packet.h"
#include "probnetkat/rational.h"

namespace probnetkat {

inline constexpr std::size_t kDefaultBasisBound = 12;

class FiniteBasis {
 public:
  // Throws Error(kCapacity) when |b| exceeds `bound`.
  explicit FiniteBasis(const HistSet& b, std::size_t bound = kDefaultBasisBound);

  std::size_t size() const { return elements_.size(); }
  std::size_t subset_count() const { return std::size_t{1} << elements_.size(); }
  const HistSet& set() const { return set_; }
  const History& element(std::size_t i) const { return elements_[i]; }

  HistSet Subset(std::uint32_t mask) const;
  // Throws Error(kInvalidArgument) unless a ⊆ b.
  std::uint32_t MaskOf(const HistSet& a) const;

 private:
  HistSet set_;
  std::vector<History> elements_;
};

// A square rational matrix over subsets of a basis, stored by nonzero
// entries per row.
class SubsetMatrix {
 public:
  using Row = std::vector<std::pair<std::size_t, Rational>>;

  explicit SubsetMatrix(std::size_t dim) : rows_(dim) {}
  static SubsetMatrix Identity(std::size_t dim);
  static SubsetMatrix Diagonal(const std::vector<Rational>& diag);

  std::size_t dim() const { return rows_.size(); }
  const Row& row(std::size_t r) const { return rows_[r]; }
  Rational At(std::size_t r, std::size_t c) const;
  // Entries must be set in increasing column order within a row.
  void Append(std::size_t r, std::size_t c, Rational v);

  SubsetMatrix operator*(const SubsetMatrix& other) const;
  std::vector<Rational> Apply(const std::vector<Rational>& x) const;
  // Rows of `this` index the high-order half of the result.
  SubsetMatrix Kronecker(const SubsetMatrix& other) const;
  // Dense row-major rendering.
  std::vector<std::vector<Rational>> Dense() const;

  friend bool operator==(const SubsetMatrix& a, const SubsetMatrix& b);

 private:
  std::vector<Row> rows_;
};

// E[b], built as the iterated Kronecker product of [[1,1],[0,1]].
SubsetMatrix BuildE(const FiniteBasis& b);
// E[b]⁻¹, built as the iterated Kronecker product of [[1,-1],[0,1]].
SubsetMatrix BuildEInverse(const FiniteBasis& b);

// μ(B_a) = Σ_{s ⊇ a} μ(s)
Rational MeasureOfBasicOpen(const Dist& mu, const HistSet& a);

// μ(A_ab), computed both by inclusion-exclusion over the basic opens and as
// the direct sum over supported sets with s ∩ b = a. Throws
// Error(kInvalidArgument) unless a ⊆ b and Error(kInternal) if the two
// routes disagree.
Rational MeasureOfAtom(const Dist& mu, const HistSet& a, const FiniteBasis& b);

struct CorrespondenceReport {
  bool pass = true;
  // Empty when pass; otherwise names the first mismatching entry.
  std::string first_discrepancy;
  std::vector<Rational> basic_open_masses;  // X_a = μ(B_a)
  std::vector<Rational> atom_masses;        // Y_a = μ(A_ab)
};

// Checks X = E·Y, Y = E⁻¹·X and N = E⁻¹·M·E, where M = diag(X) and
// N_ac = μ(A_ac) for a ⊆ c ⊆ b (zero otherwise).
CorrespondenceReport CorrespondenceCheck(const Dist& mu, const FiniteBasis& b);

struct ExtensionReport {
  bool extends = true;
  // The first subset a (in index order) whose atom value is negative.
  std::optional<HistSet> violated_atom;
  Rational violated_value = 0;
  // Inclusion-exclusion value of every atom, by subset index.
  std::vector<Rational> atom_values;
};

// Decides whether values assigned to the basic opens B_a, a ⊆ b, extend to a
// measure on the algebra generated by b: every inclusion-exclusion sum
// Σ_{a⊆c⊆b} (−1)^{|c−a|} vals(B_c) must be nonnegative. `vals` must hold an
// entry for every subset of b (Error(kInvalidArgument) otherwise) and
// vals(B_∅) must be 1.
ExtensionReport ExtensionCheck(const FiniteBasis& b,
                               const std::map<HistSet, Rational>& vals);

// μ|b = Σ_{a⊆b} μ(A_ab)·δ_a, the pushforward of μ along s ↦ s ∩ b.
Dist Restrict(const Dist& mu, const HistSet& b);

}  // namespace probnetkat

#endif  // PROBNETKAT_MEASURE_H_
