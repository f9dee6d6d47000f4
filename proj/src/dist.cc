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

#include "probnetkat/dist.h"

#include <algorithm>
#include <deque>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "probnetkat/error.h"

namespace probnetkat {

Dist::Dist() { weights_.emplace(HistSet(), Rational(1)); }

Dist Dist::FromWeights(Weights weights) {
  Rational total = 0;
  for (auto it = weights.begin(); it != weights.end();) {
    if (it->second < 0) {
      throw Error(ErrorKind::kInvalidArgument, "negative probability weight");
    }
    total += it->second;
    if (it->second == 0) {
      it = weights.erase(it);
    } else {
      ++it;
    }
  }
  if (total != 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "probability weights sum to " + FormatFraction(total) + ", not 1");
  }
  return Dist(std::move(weights));
}

Rational Dist::Prob(const HistSet& a) const {
  auto it = weights_.find(a);
  return it == weights_.end() ? Rational(0) : it->second;
}

std::vector<HistSet> Dist::Support() const {
  std::vector<HistSet> out;
  out.reserve(weights_.size());
  for (const auto& [a, w] : weights_) out.push_back(a);
  return out;
}

void DistBuilder::Add(const HistSet& a, const Rational& w) {
  if (w == 0) return;
  auto [it, inserted] = weights_.try_emplace(a, w);
  if (!inserted) it->second += w;
}

void DistBuilder::Add(HistSet&& a, const Rational& w) {
  if (w == 0) return;
  auto [it, inserted] = weights_.try_emplace(std::move(a), w);
  if (!inserted) it->second += w;
}

void DistBuilder::AddScaled(const Dist& d, const Rational& w) {
  if (w == 0) return;
  for (const auto& [a, v] : d) Add(a, v * w);
}

Dist DistBuilder::Build() && {
  std::erase_if(weights_, [](const auto& entry) { return entry.second == 0; });
  return Dist(std::move(weights_));
}

Dist Dirac(HistSet a) {
  DistBuilder b;
  b.Add(std::move(a), Rational(1));
  return std::move(b).Build();
}

Dist Bind(const Dist& mu, const Kernel& f) {
  if (mu.size() == 1 && mu.begin()->second == 1) return f(mu.begin()->first);
  DistBuilder b;
  for (const auto& [a, w] : mu) b.AddScaled(f(a), w);
  return std::move(b).Build();
}

Dist Par(const Dist& mu, const Dist& nu) {
  DistBuilder b;
  for (const auto& [x, wx] : mu) {
    for (const auto& [y, wy] : nu) b.Add(x.Union(y), wx * wy);
  }
  return std::move(b).Build();
}

Dist Convex(const Rational& r, const Dist& mu, const Dist& nu) {
  if (!InUnitInterval(r)) {
    throw Error(ErrorKind::kInvalidArgument,
                "convex weight " + FormatFraction(r) + " outside [0,1]");
  }
  if (r == 1) return mu;
  if (r == 0) return nu;
  DistBuilder b;
  b.AddScaled(mu, r);
  b.AddScaled(nu, 1 - r);
  return std::move(b).Build();
}

ExtendedRational Expectation(const RandomVariable& q, const Dist& nu) {
  Rational sum = 0;
  for (const auto& [a, w] : nu) {
    ExtendedRational v = q(a);
    if (v.infinite) return ExtendedRational::Infinity();
    sum += v.value * w;
  }
  return ExtendedRational::Finite(sum);
}

Rational MassWhere(const Dist& mu,
                   const std::function<bool(const HistSet&)>& in_event) {
  Rational sum = 0;
  for (const auto& [a, w] : mu) {
    if (in_event(a)) sum += w;
  }
  return sum;
}

namespace {

// A heaviest up-closed family of a finite ⊆-poset is a maximum-weight closure,
// found here as a minimum s-t cut with exact rational capacities.
class UpSetSearch {
 public:
  UpSetSearch(std::vector<HistSet> elements, std::vector<Rational> excess)
      : n_(elements.size()), cap_((n_ + 2) * (n_ + 2), Rational(0)) {
    const std::size_t source = n_;
    const std::size_t sink = n_ + 1;
    Rational unbounded = 1;
    for (const Rational& w : excess) {
      if (w > 0) positive_ += w;
    }
    unbounded += positive_;
    for (std::size_t i = 0; i < n_; ++i) {
      if (excess[i] > 0) Cap(source, i) = excess[i];
      if (excess[i] < 0) Cap(i, sink) = -excess[i];
      for (std::size_t j = 0; j < n_; ++j) {
        if (i != j && elements[i].IsSubsetOf(elements[j])) Cap(i, j) = unbounded;
      }
    }
  }

  // True iff some up-set has strictly positive total excess.
  bool FindViolation() { return positive_ - MaxFlow() > 0; }

 private:
  Rational& Cap(std::size_t from, std::size_t to) { return cap_[from * (n_ + 2) + to]; }

  Rational MaxFlow() {
    const std::size_t nodes = n_ + 2;
    const std::size_t source = n_;
    const std::size_t sink = n_ + 1;
    Rational flow = 0;
    std::vector<std::size_t> parent(nodes);
    for (;;) {
      std::vector<bool> seen(nodes, false);
      std::deque<std::size_t> frontier{source};
      seen[source] = true;
      while (!frontier.empty() && !seen[sink]) {
        std::size_t u = frontier.front();
        frontier.pop_front();
        for (std::size_t v = 0; v < nodes; ++v) {
          if (!seen[v] && Cap(u, v) > 0) {
            seen[v] = true;
            parent[v] = u;
            frontier.push_back(v);
          }
        }
      }
      if (!seen[sink]) return flow;
      Rational push = Cap(parent[sink], sink);
      for (std::size_t v = sink; v != source; v = parent[v]) {
        push = std::min(push, Cap(parent[v], v));
      }
      for (std::size_t v = sink; v != source; v = parent[v]) {
        Cap(parent[v], v) -= push;
        Cap(v, parent[v]) += push;
      }
      flow += push;
    }
  }

  std::size_t n_;
  std::vector<Rational> cap_;
  Rational positive_ = 0;
};

}  // namespace

bool Leq(const Dist& mu, const Dist& nu, std::size_t bound) {
  std::map<HistSet, Rational> excess;
  for (const auto& [a, w] : mu) excess[a] += w;
  for (const auto& [a, w] : nu) excess[a] -= w;
  if (excess.size() > bound) {
    throw Error(ErrorKind::kCapacity,
                "order check over a combined support of " +
                    std::to_string(excess.size()) + " sets exceeds the bound " +
                    std::to_string(bound));
  }
  std::vector<HistSet> elements;
  std::vector<Rational> values;
  for (auto& [a, w] : excess) {
    elements.push_back(a);
    values.push_back(w);
  }
  return !UpSetSearch(std::move(elements), std::move(values)).FindViolation();
}

}  // namespace probnetkat
