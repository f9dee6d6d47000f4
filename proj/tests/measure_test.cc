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

#include "probnetkat/error.h"
#include "probnetkat/measure.h"
#include "test_support.h"

namespace probnetkat {
namespace {

using testing::AllSubsets;
using testing::Gen;
using testing::H;
using testing::Pk;
using testing::Q;

const History kH1 = H({Pk(0, 0)});
const History kH2 = H({Pk(0, 1)});

std::vector<std::vector<Rational>> Rows(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<std::vector<Rational>> out;
  for (const auto& r : rows) {
    std::vector<Rational> row;
    for (int v : r) row.emplace_back(v);
    out.push_back(std::move(row));
  }
  return out;
}

// A basis of `size` distinct histories.
HistSet Basis(std::size_t size) {
  std::vector<History> hs;
  for (std::size_t i = 0; hs.size() < size; ++i) {
    std::vector<Packet> entries;
    std::size_t bits = i;
    do {
      entries.push_back(Pk(static_cast<FieldValue>(bits & 1U), static_cast<FieldValue>(bits >> 1 & 1U)));
      bits >>= 2;
    } while (bits != 0);
    hs.push_back(History(std::move(entries)));
  }
  return HistSet(std::move(hs));
}

TEST(FiniteBasisTest, SubsetIndexingUsesOneBitPerElement) {
  FiniteBasis b(HistSet{kH1, kH2});
  EXPECT_EQ(b.size(), 2U);
  EXPECT_EQ(b.Subset(0), HistSet());
  EXPECT_EQ(b.Subset(1), HistSet{kH1});
  EXPECT_EQ(b.Subset(2), HistSet{kH2});
  EXPECT_EQ(b.Subset(3), (HistSet{kH1, kH2}));
  EXPECT_EQ(b.MaskOf(HistSet{kH2}), 2U);
  EXPECT_THROW(b.MaskOf(HistSet{H({Pk(1, 1)})}), Error);
}

TEST(FiniteBasisTest, CapacityBound) {
  try {
    FiniteBasis b(Basis(13));
    FAIL() << "expected a capacity error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCapacity);
  }
}

TEST(EMatrixTest, TwoElementBasisMatchesDisplayedMatrices) {
  FiniteBasis b(HistSet{kH1, kH2});
  EXPECT_EQ(BuildE(b).Dense(), Rows({{1, 1, 1, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}, {0, 0, 0, 1}}));
  EXPECT_EQ(BuildEInverse(b).Dense(),
            Rows({{1, -1, -1, 1}, {0, 1, 0, -1}, {0, 0, 1, -1}, {0, 0, 0, 1}}));
}

TEST(EMatrixTest, EntriesEncodeSubsetInclusion) {
  FiniteBasis b(Basis(4));
  SubsetMatrix e = BuildE(b);
  SubsetMatrix inv = BuildEInverse(b);
  for (std::uint32_t a = 0; a < b.subset_count(); ++a) {
    for (std::uint32_t c = 0; c < b.subset_count(); ++c) {
      bool included = (a & c) == a;
      EXPECT_EQ(e.At(a, c), included ? 1 : 0);
      int sign = __builtin_popcount(c & ~a) % 2 == 0 ? 1 : -1;
      EXPECT_EQ(inv.At(a, c), included ? sign : 0);
    }
  }
}

TEST(EMatrixTest, InverseIsExactUpToEightElements) {
  for (std::size_t n = 0; n <= 8; ++n) {
    FiniteBasis b(Basis(n));
    SubsetMatrix id = SubsetMatrix::Identity(b.subset_count());
    EXPECT_EQ(BuildE(b) * BuildEInverse(b), id) << n;
    EXPECT_EQ(BuildEInverse(b) * BuildE(b), id) << n;
  }
}

TEST(SubsetMatrixTest, KroneckerOfTwoByTwo) {
  SubsetMatrix m(2);
  m.Append(0, 0, 1);
  m.Append(0, 1, 2);
  m.Append(1, 1, 3);
  SubsetMatrix k = m.Kronecker(SubsetMatrix::Identity(2));
  EXPECT_EQ(k.Dense(), Rows({{1, 0, 2, 0}, {0, 1, 0, 2}, {0, 0, 3, 0}, {0, 0, 0, 3}}));
  EXPECT_EQ(m.Apply({Rational(1), Rational(1)}), (std::vector<Rational>{3, 3}));
}

TEST(MeasureTest, BasicOpensAndAtoms) {
  Dist mu = Dist::FromWeights({{HistSet{kH1}, Q(1, 2)}, {HistSet{kH1, kH2}, Q(1, 4)},
                               {HistSet(), Q(1, 4)}});
  FiniteBasis b(HistSet{kH1, kH2});
  EXPECT_EQ(MeasureOfBasicOpen(mu, HistSet()), 1);
  EXPECT_EQ(MeasureOfBasicOpen(mu, HistSet{kH1}), Q(3, 4));
  EXPECT_EQ(MeasureOfBasicOpen(mu, HistSet{kH2}), Q(1, 4));
  EXPECT_EQ(MeasureOfAtom(mu, HistSet{kH1}, b), Q(1, 2));
  EXPECT_EQ(MeasureOfAtom(mu, HistSet(), b), Q(1, 4));
  EXPECT_EQ(MeasureOfAtom(mu, HistSet{kH2}, b), 0);
  FiniteBasis only_h1(HistSet{kH1});
  EXPECT_EQ(MeasureOfAtom(mu, HistSet{kH1}, only_h1), Q(3, 4));
  EXPECT_THROW(MeasureOfAtom(mu, HistSet{kH2}, only_h1), Error);
}

TEST(CorrespondenceTest, PassesOnRandomDistributions) {
  Gen g(500);
  for (int i = 0; i < 500; ++i) {
    Dist mu = g.RandomDist(5, 3, 2);
    HistSet b = g.RandomSet(4, 2);
    // Mix in support histories so atoms are non-trivial.
    for (const auto& [s, p] : mu) {
      if (!s.empty() && b.size() < 5 && g.Coin(50)) b = b.Union(HistSet{s.members().front()});
    }
    FiniteBasis basis(b);
    CorrespondenceReport r = CorrespondenceCheck(mu, basis);
    ASSERT_TRUE(r.pass) << r.first_discrepancy;
    Rational total = 0;
    for (const Rational& y : r.atom_masses) {
      EXPECT_GE(y, 0);
      total += y;
    }
    EXPECT_EQ(total, 1);
    EXPECT_EQ(r.basic_open_masses[0], 1);
  }
}

TEST(ExtensionTest, GenuineMeasureExtends) {
  Gen g(9);
  for (int i = 0; i < 100; ++i) {
    Dist mu = g.RandomDist(4, 3, 2);
    FiniteBasis b(g.RandomSet(3, 2));
    std::map<HistSet, Rational> vals;
    for (std::uint32_t m = 0; m < b.subset_count(); ++m) {
      vals[b.Subset(m)] = MeasureOfBasicOpen(mu, b.Subset(m));
    }
    ExtensionReport r = ExtensionCheck(b, vals);
    EXPECT_TRUE(r.extends);
    for (std::uint32_t m = 0; m < b.subset_count(); ++m) {
      EXPECT_EQ(r.atom_values[m], MeasureOfAtom(mu, b.Subset(m), b));
    }
  }
}

TEST(ExtensionTest, NonModularValuesAreRejected) {
  FiniteBasis b(HistSet{kH1, kH2});
  std::map<HistSet, Rational> vals = {{HistSet(), 1},
                                      {HistSet{kH1}, Q(1, 2)},
                                      {HistSet{kH2}, Q(1, 2)},
                                      {HistSet{kH1, kH2}, Q(3, 4)}};
  ExtensionReport r = ExtensionCheck(b, vals);
  EXPECT_FALSE(r.extends);
  ASSERT_TRUE(r.violated_atom.has_value());
  EXPECT_EQ(*r.violated_atom, HistSet{kH1});
  EXPECT_EQ(r.violated_value, Q(-1, 4));
}

TEST(ExtensionTest, RequiresCompleteValuesAndUnitMass) {
  FiniteBasis b(HistSet{kH1});
  EXPECT_THROW(ExtensionCheck(b, {{HistSet(), 1}}), Error);
  EXPECT_THROW(ExtensionCheck(b, {{HistSet(), Q(1, 2)}, {HistSet{kH1}, Q(1, 4)}}), Error);
}

TEST(RestrictionTest, ExampleRestriction) {
  Dist mu = Dist::FromWeights({{HistSet{kH1, kH2}, Q(1, 2)}, {HistSet{kH2}, Q(1, 2)}});
  Dist r = Restrict(mu, HistSet{kH1});
  EXPECT_EQ(r.Prob(HistSet{kH1}), Q(1, 2));
  EXPECT_EQ(r.Prob(HistSet()), Q(1, 2));
}

TEST(RestrictionTest, PropertiesHoldOnRandomInstances) {
  Gen g(77);
  for (int i = 0; i < 500; ++i) {
    Dist mu = g.RandomDist(4, 3, 2);
    HistSet b = g.RandomSet(4, 2);
    HistSet d = g.RandomSet(4, 2);
    EXPECT_EQ(Restrict(Restrict(mu, b), d), Restrict(mu, b.Intersection(d)));
    HistSet a = b.Intersection(d);
    Dist ma = Restrict(mu, a), mb = Restrict(mu, b);
    EXPECT_TRUE(Leq(ma, mb));
    EXPECT_TRUE(Leq(mb, mu, 64));
  }
}

}  // namespace
}  // namespace probnetkat
