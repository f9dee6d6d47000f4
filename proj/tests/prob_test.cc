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

#include <gtest/gtest.h>

#include <map>
#include <vector>

#include "probnetkat/dist.h"
#include "probnetkat/error.h"
#include "test_support.h"

namespace probnetkat {
namespace {

using testing::AllSubsets;
using testing::BruteLeq;
using testing::Gen;
using testing::H;
using testing::Pk;
using testing::Q;

const History kPi = H({Pk(0, 0)});
const History kSigma = H({Pk(0, 1)});
const History kTau = H({Pk(1, 0)});

Dist D(std::initializer_list<std::pair<HistSet, Rational>> entries) {
  Dist::Weights w;
  for (const auto& [s, p] : entries) w[s] += p;
  return Dist::FromWeights(std::move(w));
}

TEST(DistTest, DefaultIsPointMassOnEmptySet) {
  Dist d;
  EXPECT_EQ(d.size(), 1U);
  EXPECT_EQ(d.Prob(HistSet()), 1);
  EXPECT_EQ(d, Dirac(HistSet()));
}

TEST(DistTest, FromWeightsValidates) {
  EXPECT_THROW(D({{HistSet{kPi}, Q(1, 2)}}), Error);
  EXPECT_THROW(D({{HistSet{kPi}, Q(3, 2)}, {HistSet{kSigma}, Q(-1, 2)}}), Error);
  Dist d = D({{HistSet{kPi}, 1}, {HistSet{kSigma}, 0}});
  EXPECT_EQ(d.size(), 1U);
  EXPECT_EQ(d.Prob(HistSet{kSigma}), 0);
}

TEST(DistTest, BindAveragesKernel) {
  Dist mu = D({{HistSet{kPi}, Q(1, 3)}, {HistSet{kSigma}, Q(2, 3)}});
  Kernel f = [](const HistSet& a) {
    if (a == HistSet{kPi}) return D({{HistSet{kTau}, Q(1, 2)}, {HistSet(), Q(1, 2)}});
    return Dirac(HistSet{kTau});
  };
  Dist r = Bind(mu, f);
  EXPECT_EQ(r.Prob(HistSet{kTau}), Q(5, 6));
  EXPECT_EQ(r.Prob(HistSet()), Q(1, 6));
}

TEST(DistTest, ParIsUnionProduct) {
  Dist mu = D({{HistSet{kPi}, Q(1, 2)}, {HistSet{kSigma}, Q(1, 2)}});
  Dist nu = D({{HistSet{kSigma}, Q(1, 2)}, {HistSet{kTau}, Q(1, 2)}});
  Dist r = Par(mu, nu);
  EXPECT_EQ(r.Prob(HistSet{kPi, kSigma}), Q(1, 4));
  EXPECT_EQ(r.Prob(HistSet{kPi, kTau}), Q(1, 4));
  EXPECT_EQ(r.Prob(HistSet{kSigma}), Q(1, 4));
  EXPECT_EQ(r.Prob(HistSet{kSigma, kTau}), Q(1, 4));
}

TEST(DistTest, ConvexCombination) {
  Dist r = Convex(Q(1, 3), Dirac(HistSet{kPi}), Dirac(HistSet{kSigma}));
  EXPECT_EQ(r.Prob(HistSet{kPi}), Q(1, 3));
  EXPECT_EQ(r.Prob(HistSet{kSigma}), Q(2, 3));
  EXPECT_EQ(Convex(1, Dirac(HistSet{kPi}), Dirac(HistSet{kSigma})), Dirac(HistSet{kPi}));
  EXPECT_THROW(Convex(Q(5, 4), Dist(), Dist()), Error);
}

TEST(DistTest, ExpectationAndMass) {
  Dist mu = D({{HistSet{kPi}, Q(1, 4)}, {HistSet{kPi, kSigma}, Q(3, 4)}});
  ExtendedRational e = Expectation(
      [](const HistSet& a) { return ExtendedRational::Finite(Rational(a.size())); }, mu);
  EXPECT_FALSE(e.infinite);
  EXPECT_EQ(e.value, Q(7, 4));
  EXPECT_EQ(MassWhere(mu, [](const HistSet& a) { return a.size() == 2; }), Q(3, 4));
  ExtendedRational inf = Expectation(
      [](const HistSet& a) {
        return a.size() == 2 ? ExtendedRational::Infinity() : ExtendedRational::Finite(0);
      },
      mu);
  EXPECT_TRUE(inf.infinite);
}

// A kernel table over every subset of a 3-history universe.
class KernelTable {
 public:
  KernelTable(Gen& g, const std::vector<HistSet>& pool) {
    for (const HistSet& a : pool) table_[a] = g.RandomDistOver(pool, 3);
  }
  Kernel AsKernel() const {
    return [this](const HistSet& a) { return table_.at(a); };
  }

 private:
  std::map<HistSet, Dist> table_;
};

TEST(MonadLawsTest, HoldExactlyOnRandomInstances) {
  Gen g(7);
  std::vector<HistSet> pool = AllSubsets({kPi, kSigma, kTau});
  for (int i = 0; i < 1000; ++i) {
    Dist mu = g.RandomDistOver(pool, 4);
    KernelTable ft(g, pool), gt(g, pool);
    Kernel f = ft.AsKernel(), k = gt.AsKernel();
    HistSet a = g.Pick(pool);
    EXPECT_EQ(Bind(Dirac(a), f), f(a));
    EXPECT_EQ(Bind(mu, [](const HistSet& s) { return Dirac(s); }), mu);
    EXPECT_EQ(Bind(Bind(mu, f), k), Bind(mu, [&](const HistSet& s) { return Bind(f(s), k); }));
  }
}

TEST(LeqTest, NonSemilatticeFixture) {
  // Each nu_i bounds exactly the two mu_j with j != i.
  Dist mu1 = D({{HistSet{kPi}, Q(1, 2)}, {HistSet{kSigma}, Q(1, 2)}});
  Dist mu2 = D({{HistSet{kSigma}, Q(1, 2)}, {HistSet{kTau}, Q(1, 2)}});
  Dist mu3 = D({{HistSet{kTau}, Q(1, 2)}, {HistSet{kPi}, Q(1, 2)}});
  Dist nu1 = D({{HistSet{kTau}, Q(1, 2)}, {HistSet{kPi, kSigma}, Q(1, 2)}});
  Dist nu2 = D({{HistSet{kPi}, Q(1, 2)}, {HistSet{kSigma, kTau}, Q(1, 2)}});
  Dist nu3 = D({{HistSet{kSigma}, Q(1, 2)}, {HistSet{kTau, kPi}, Q(1, 2)}});
  const std::vector<History> universe = {kPi, kSigma, kTau};
  const Dist* mus[] = {&mu1, &mu2, &mu3};
  const Dist* nus[] = {&nu1, &nu2, &nu3};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_EQ(Leq(*mus[j], *nus[i]), i != j) << "mu" << j + 1 << " vs nu" << i + 1;
      EXPECT_EQ(Leq(*mus[j], *nus[i]), BruteLeq(*mus[j], *nus[i], universe));
    }
  }
  // The up-set of sets meeting {pi, sigma} has mass 1 under mu1, 1/2 under nu1.
  auto meets = [](const HistSet& a) { return a.Contains(kPi) || a.Contains(kSigma); };
  EXPECT_EQ(MassWhere(mu1, meets), Q(1));
  EXPECT_EQ(MassWhere(nu1, meets), Q(1, 2));
  EXPECT_FALSE(Leq(nu1, nu2));
  EXPECT_FALSE(Leq(nu2, nu1));
  EXPECT_FALSE(Leq(mu1, mu2));
}

TEST(LeqTest, BottomIsBelowEverything) {
  Dist bottom;
  Dist mu = D({{HistSet{kPi}, Q(1, 2)}, {HistSet{kSigma, kTau}, Q(1, 2)}});
  EXPECT_TRUE(Leq(bottom, mu));
  EXPECT_FALSE(Leq(mu, bottom));
  EXPECT_TRUE(Leq(mu, mu));
}

TEST(LeqTest, ParIsAnUpperBound) {
  Gen g(5);
  std::vector<HistSet> pool = AllSubsets({kPi, kSigma, kTau});
  for (int i = 0; i < 300; ++i) {
    Dist mu = g.RandomDistOver(pool, 4);
    Dist nu = g.RandomDistOver(pool, 4);
    Dist both = Par(mu, nu);
    EXPECT_TRUE(Leq(mu, both));
    EXPECT_TRUE(Leq(nu, both));
  }
}

TEST(LeqTest, AgreesWithBruteForceOracle) {
  Gen g(99);
  std::vector<History> universe = {kPi, kSigma, kTau};
  std::vector<HistSet> pool = AllSubsets(universe);
  int agree_true = 0;
  for (int i = 0; i < 1500; ++i) {
    Dist mu = g.RandomDistOver(pool, 5);
    Dist nu;
    if (g.Coin(50)) {
      // Push μ upward so that μ ⊑ ν holds often.
      HistSet extra = g.Pick(pool);
      nu = Bind(mu, [&](const HistSet& a) {
        return Convex(Q(1, 2), Dirac(a), Dirac(a.Union(extra)));
      });
    } else {
      nu = g.RandomDistOver(pool, 5);
    }
    bool brute = BruteLeq(mu, nu, universe);
    ASSERT_EQ(Leq(mu, nu), brute);
    agree_true += brute ? 1 : 0;
  }
  EXPECT_GT(agree_true, 100);
}

TEST(LeqTest, AgreesWithOracleOnLargerUniverse) {
  Gen g(3);
  std::vector<History> universe = {kPi, kSigma, kTau, H({Pk(1, 1)})};
  std::vector<HistSet> pool = AllSubsets(universe);
  for (int i = 0; i < 40; ++i) {
    Dist mu = g.RandomDistOver(pool, 5);
    Dist nu = g.Coin(50) ? Par(mu, g.RandomDistOver(pool, 2)) : g.RandomDistOver(pool, 5);
    EXPECT_EQ(Leq(mu, nu), BruteLeq(mu, nu, universe));
  }
}

TEST(LeqTest, CapacityBoundIsEnforced) {
  Gen g(1);
  Dist::Weights wm, wn;
  for (int i = 0; i < 12; ++i) {
    wm[HistSet{g.RandomHistory(6)}] += Q(1, 12);
    wn[HistSet{g.RandomHistory(6), g.RandomHistory(6)}] += Q(1, 12);
  }
  Dist mu = Dist::FromWeights(wm), nu = Dist::FromWeights(wn);
  try {
    Leq(mu, nu, 4);
    FAIL() << "expected a capacity error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCapacity);
  }
}

}  // namespace
}  // namespace probnetkat
