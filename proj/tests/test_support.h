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

#ifndef PROBNETKAT_TESTS_TEST_SUPPORT_H_
#define PROBNETKAT_TESTS_TEST_SUPPORT_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "probnetkat/dist.h"
#include "probnetkat/packet.h"
#include "probnetkat/program.h"
#include "probnetkat/rational.h"

namespace probnetkat::testing {

// sw and pt, each ranging over {0, 1}.
inline FieldSchema TinySchema() { return FieldSchema({{"sw", 0, 1}, {"pt", 0, 1}}); }

inline Packet Pk(FieldValue sw, FieldValue pt) { return Packet{sw, pt}; }

// History from packets listed head first.
inline History H(std::initializer_list<Packet> entries) {
  return History(std::vector<Packet>(entries));
}

inline Rational Q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  int Int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool Coin(int percent) { return Int(1, 100) <= percent; }

  Rational Prob() {
    static const long kNums[] = {1, 1, 2, 1, 3, 9};
    static const long kDens[] = {2, 3, 3, 4, 4, 10};
    int i = Int(0, 5);
    return Q(kNums[i], kDens[i]);
  }

  Packet RandomPacket() { return Pk(Int(0, 1), Int(0, 1)); }

  History RandomHistory(int max_len) {
    std::vector<Packet> entries;
    int len = Int(1, max_len);
    for (int i = 0; i < len; ++i) entries.push_back(RandomPacket());
    return History(std::move(entries));
  }

  HistSet RandomSet(int max_size, int max_len) {
    std::vector<History> hs;
    int size = Int(0, max_size);
    for (int i = 0; i < size; ++i) hs.push_back(RandomHistory(max_len));
    return HistSet(std::move(hs));
  }

  // A random member of a fixed pool of sets.
  HistSet Pick(const std::vector<HistSet>& pool) {
    return pool[static_cast<std::size_t>(Int(0, static_cast<int>(pool.size()) - 1))];
  }

  Dist RandomDistOver(const std::vector<HistSet>& pool, int max_support) {
    Dist::Weights w;
    int k = Int(1, max_support);
    std::vector<long> raw;
    std::vector<HistSet> sets;
    long total = 0;
    for (int i = 0; i < k; ++i) {
      sets.push_back(Pick(pool));
      raw.push_back(Int(1, 6));
      total += raw.back();
    }
    for (int i = 0; i < k; ++i) w[sets[i]] += Q(raw[i], total);
    return Dist::FromWeights(std::move(w));
  }

  Dist RandomDist(int max_support, int max_set, int max_len) {
    std::vector<HistSet> pool;
    for (int i = 0; i < max_support; ++i) pool.push_back(RandomSet(max_set, max_len));
    return RandomDistOver(pool, max_support);
  }

  Program RandomPredicate(int depth) {
    if (depth <= 0 || Coin(35)) {
      switch (Int(0, 3)) {
        case 0: return Program::Drop();
        case 1: return Program::Skip();
        default: return Program::Test(Coin(50) ? "sw" : "pt", static_cast<FieldValue>(Int(0, 1)));
      }
    }
    switch (Int(0, 2)) {
      case 0: return Program::Neg(RandomPredicate(depth - 1));
      case 1: return Program::Par(RandomPredicate(depth - 1), RandomPredicate(depth - 1));
      default: return Program::Seq(RandomPredicate(depth - 1), RandomPredicate(depth - 1));
    }
  }

  // Star-containing programs of bounded depth over TinySchema.
  Program RandomProgram(int depth, bool allow_dup = true, bool allow_sugar = false) {
    if (depth <= 0 || Coin(25)) {
      int pick = Int(0, 5);
      if (pick == 0 && allow_dup && Coin(50)) return Program::Dup();
      if (pick <= 2) return Program::Mod(Coin(50) ? "sw" : "pt", static_cast<FieldValue>(Int(0, 1)));
      return RandomPredicate(1);
    }
    int d = depth - 1;
    switch (Int(0, allow_sugar ? 8 : 5)) {
      case 0: return Program::Par(RandomProgram(d, allow_dup, allow_sugar),
                                  RandomProgram(d, allow_dup, allow_sugar));
      case 1: return Program::Seq(RandomProgram(d, allow_dup, allow_sugar),
                                  RandomProgram(d, allow_dup, allow_sugar));
      case 2: return Program::Choice(Prob(), RandomProgram(d, allow_dup, allow_sugar),
                                     RandomProgram(d, allow_dup, allow_sugar));
      case 3: return Program::Star(RandomProgram(d, allow_dup, allow_sugar));
      case 4: return Program::Neg(RandomPredicate(d));
      case 5: return RandomPredicate(d);
      case 6: return Program::BoundedStar(static_cast<std::uint32_t>(Int(0, 3)),
                                          RandomProgram(d, allow_dup, allow_sugar));
      case 7: return Program::If(RandomPredicate(1), RandomProgram(d, allow_dup, allow_sugar),
                                 RandomProgram(d, allow_dup, allow_sugar));
      default: return Program::While(RandomPredicate(1), RandomProgram(d, allow_dup, allow_sugar));
    }
  }

 private:
  std::mt19937_64 rng_;
};

// Every subset of the histories in `universe`, as sets.
inline std::vector<HistSet> AllSubsets(const std::vector<History>& universe) {
  std::vector<HistSet> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << universe.size()); ++mask) {
    std::vector<History> hs;
    for (std::size_t i = 0; i < universe.size(); ++i) {
      if (mask >> i & 1U) hs.push_back(universe[i]);
    }
    out.push_back(HistSet(std::move(hs)));
  }
  return out;
}

// Brute-force Scott order: μ ⊑ ν iff μ(B) <= ν(B) for every up-closed family
// B of subsets of `universe` (all supports must lie in its powerset).
inline bool BruteLeq(const Dist& mu, const Dist& nu, const std::vector<History>& universe) {
  std::vector<HistSet> sets = AllSubsets(universe);
  const std::size_t n = sets.size();
  for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << n); ++fam) {
    bool up_closed = true;
    for (std::size_t i = 0; i < n && up_closed; ++i) {
      if (!(fam >> i & 1U)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!(fam >> j & 1U) && sets[i].IsSubsetOf(sets[j])) {
          up_closed = false;
          break;
        }
      }
    }
    if (!up_closed) continue;
    Rational m = 0, v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (fam >> i & 1U) {
        m += mu.Prob(sets[i]);
        v += nu.Prob(sets[i]);
      }
    }
    if (m > v) return false;
  }
  return true;
}

}  // namespace probnetkat::testing

#endif  // PROBNETKAT_TESTS_TEST_SUPPORT_H_
