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

// Finite discrete probability measures over history sets and the operations
// of the probability monad on them.

#ifndef PROBNETKAT_DIST_H_
#define PROBNETKAT_DIST_H_

#include <cstddef>
#include <functional>
#include <map>
#include <vector>

#include "probnetkat/packet.h"
#include "probnetkat/rational.h"

namespace probnetkat {

// A map from history sets to strictly positive rational weights summing to
// exactly 1. Zero weights never appear, so equality is structural.
class Dist {
 public:
  using Weights = std::map<HistSet, Rational>;

  // Point mass on the empty set.
  Dist();

  // Validates and prunes: drops zero entries, rejects negative weights or a
  // total other than 1 with Error(kInvalidArgument).
  static Dist FromWeights(Weights weights);

  const Weights& weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  auto begin() const { return weights_.begin(); }
  auto end() const { return weights_.end(); }

  // μ({a}); zero outside the support.
  Rational Prob(const HistSet& a) const;
  std::vector<HistSet> Support() const;

  friend bool operator==(const Dist&, const Dist&) = default;

 private:
  friend class DistBuilder;
  explicit Dist(Weights weights) : weights_(std::move(weights)) {}

  Weights weights_;
};

// Accumulates weighted history sets; Build() prunes zeros and, in debug use,
// callers are responsible for the total being 1.
class DistBuilder {
 public:
  void Add(const HistSet& a, const Rational& w);
  void Add(HistSet&& a, const Rational& w);
  // Adds every entry of `d` scaled by `w`.
  void AddScaled(const Dist& d, const Rational& w);
  Dist Build() &&;

 private:
  Dist::Weights weights_;
};

using Kernel = std::function<Dist(const HistSet&)>;
using RandomVariable = std::function<ExtendedRational(const HistSet&)>;

// η(a) = δ_a
Dist Dirac(HistSet a);

// (μ >>= f)(b) = Σ_a μ(a)·f(a)(b), summed in canonical support order.
Dist Bind(const Dist& mu, const Kernel& f);

// (μ & ν)(c) = Σ_{a∪b=c} μ(a)·ν(b)
Dist Par(const Dist& mu, const Dist& nu);

// r·μ + (1−r)·ν. Throws Error(kInvalidArgument) unless 0 <= r <= 1.
Dist Convex(const Rational& r, const Dist& mu, const Dist& nu);

// Σ_a Q(a)·ν(a); infinite if Q is infinite anywhere on the support.
ExtendedRational Expectation(const RandomVariable& q, const Dist& nu);

// μ(B) where B is given by its characteristic predicate on history sets.
Rational MassWhere(const Dist& mu, const std::function<bool(const HistSet&)>& in_event);

inline constexpr std::size_t kDefaultLeqBound = 20;

// The order μ ⊑ ν: μ(B) ≤ ν(B) for every Scott-open B. Both measures live on
// finite sets, so it suffices to range over the up-closed subsets U of the
// combined support S (ordered by ⊆): every Scott-open B meets S in such a U,
// and every such U is the trace of the Scott-open ↑U. The heaviest U under
// μ − ν is found as a minimum cut, polynomial in |S|; throws Error(kCapacity)
// when |S| exceeds `bound`.
bool Leq(const Dist& mu, const Dist& nu, std::size_t bound = kDefaultLeqBound);

}  // namespace probnetkat

#endif  // PROBNETKAT_DIST_H_
