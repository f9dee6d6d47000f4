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

#include "probnetkat/measure.h"

#include <bit>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "probnetkat/error.h"

namespace probnetkat {

FiniteBasis::FiniteBasis(const HistSet& b, std::size_t bound)
    : set_(b), elements_(b.members()) {
  if (elements_.size() > bound) {
    throw Error(ErrorKind::kCapacity,
                "basis of " + std::to_string(elements_.size()) +
                    " histories exceeds the bound " + std::to_string(bound));
  }
}

HistSet FiniteBasis::Subset(std::uint32_t mask) const {
  std::vector<History> members;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (mask & (std::uint32_t{1} << i)) members.push_back(elements_[i]);
  }
  return HistSet(std::move(members));
}

std::uint32_t FiniteBasis::MaskOf(const HistSet& a) const {
  std::uint32_t mask = 0;
  std::size_t i = 0;
  for (const History& h : a) {
    while (i < elements_.size() && elements_[i] < h) ++i;
    if (i == elements_.size() || !(elements_[i] == h)) {
      throw Error(ErrorKind::kInvalidArgument,
                  DebugString(a) + " is not a subset of the basis " + DebugString(set_));
    }
    mask |= std::uint32_t{1} << i;
  }
  return mask;
}

SubsetMatrix SubsetMatrix::Identity(std::size_t dim) {
  SubsetMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.Append(i, i, 1);
  return m;
}

SubsetMatrix SubsetMatrix::Diagonal(const std::vector<Rational>& diag) {
  SubsetMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.Append(i, i, diag[i]);
  return m;
}

Rational SubsetMatrix::At(std::size_t r, std::size_t c) const {
  for (const auto& [col, v] : rows_.at(r)) {
    if (col == c) return v;
    if (col > c) break;
  }
  return 0;
}

void SubsetMatrix::Append(std::size_t r, std::size_t c, Rational v) {
  if (v == 0) return;
  rows_.at(r).emplace_back(c, std::move(v));
}

SubsetMatrix SubsetMatrix::operator*(const SubsetMatrix& other) const {
  SubsetMatrix out(dim());
  for (std::size_t r = 0; r < dim(); ++r) {
    std::map<std::size_t, Rational> acc;
    for (const auto& [k, a] : rows_[r]) {
      for (const auto& [c, b] : other.rows_[k]) acc[c] += a * b;
    }
    for (auto& [c, v] : acc) out.Append(r, c, std::move(v));
  }
  return out;
}

std::vector<Rational> SubsetMatrix::Apply(const std::vector<Rational>& x) const {
  std::vector<Rational> y(dim(), Rational(0));
  for (std::size_t r = 0; r < dim(); ++r) {
    for (const auto& [c, v] : rows_[r]) y[r] += v * x.at(c);
  }
  return y;
}

SubsetMatrix SubsetMatrix::Kronecker(const SubsetMatrix& other) const {
  const std::size_t n = other.dim();
  SubsetMatrix out(dim() * n);
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (const auto& [j, a] : rows_[i]) {
        for (const auto& [l, b] : other.rows_[k]) out.Append(i * n + k, j * n + l, a * b);
      }
    }
  }
  return out;
}

std::vector<std::vector<Rational>> SubsetMatrix::Dense() const {
  std::vector<std::vector<Rational>> out(dim(), std::vector<Rational>(dim(), Rational(0)));
  for (std::size_t r = 0; r < dim(); ++r) {
    for (const auto& [c, v] : rows_[r]) out[r][c] = v;
  }
  return out;
}

bool operator==(const SubsetMatrix& a, const SubsetMatrix& b) { return a.rows_ == b.rows_; }

namespace {

SubsetMatrix Block(int corner) {
  SubsetMatrix m(2);
  m.Append(0, 0, 1);
  m.Append(0, 1, corner);
  m.Append(1, 1, 1);
  return m;
}

SubsetMatrix KroneckerPower(const FiniteBasis& b, int corner) {
  SubsetMatrix m = SubsetMatrix::Identity(1);
  const SubsetMatrix block = Block(corner);
  for (std::size_t i = 0; i < b.size(); ++i) m = block.Kronecker(m);
  return m;
}

}  // namespace

SubsetMatrix BuildE(const FiniteBasis& b) { return KroneckerPower(b, 1); }

SubsetMatrix BuildEInverse(const FiniteBasis& b) { return KroneckerPower(b, -1); }

Rational MeasureOfBasicOpen(const Dist& mu, const HistSet& a) {
  Rational sum = 0;
  for (const auto& [s, w] : mu) {
    if (a.IsSubsetOf(s)) sum += w;
  }
  return sum;
}

Rational MeasureOfAtom(const Dist& mu, const HistSet& a, const FiniteBasis& b) {
  const std::uint32_t a_mask = b.MaskOf(a);
  Rational direct = 0;
  for (const auto& [s, w] : mu) {
    if (s.Intersection(b.set()) == a) direct += w;
  }
  // Supersets c of a within b are a | m for every m over the free bits.
  const std::uint32_t free = static_cast<std::uint32_t>(b.subset_count() - 1) & ~a_mask;
  Rational alternating = 0;
  for (std::uint32_t m = free;; m = (m - 1) & free) {
    Rational x = MeasureOfBasicOpen(mu, b.Subset(a_mask | m));
    if (std::popcount(m) % 2 == 0) {
      alternating += x;
    } else {
      alternating -= x;
    }
    if (m == 0) break;
  }
  if (direct != alternating) {
    throw Error(ErrorKind::kInternal,
                "inclusion-exclusion (" + FormatFraction(alternating) +
                    ") disagrees with the direct atom sum (" + FormatFraction(direct) + ")");
  }
  return direct;
}

namespace {

std::string Mismatch(const std::string& what, const FiniteBasis& b, std::uint32_t index,
                     const Rational& expected, const Rational& actual) {
  return what + "[" + DebugString(b.Subset(index)) + "]: expected " +
         FormatFraction(expected) + ", got " + FormatFraction(actual);
}

}  // namespace

CorrespondenceReport CorrespondenceCheck(const Dist& mu, const FiniteBasis& b) {
  const std::size_t dim = b.subset_count();
  CorrespondenceReport report;
  report.basic_open_masses.assign(dim, Rational(0));
  report.atom_masses.assign(dim, Rational(0));
  for (std::uint32_t a = 0; a < dim; ++a) {
    report.basic_open_masses[a] = MeasureOfBasicOpen(mu, b.Subset(a));
  }
  // N_ac = μ(A_ac): a supported s lands in the atom (s ∩ c) of every c.
  std::vector<std::uint32_t> traces;
  for (const auto& [s, w] : mu) {
    std::uint32_t trace = b.MaskOf(s.Intersection(b.set()));
    traces.push_back(trace);
    report.atom_masses[trace] += w;
  }
  auto fail = [&report](std::string message) {
    if (report.pass) {
      report.pass = false;
      report.first_discrepancy = std::move(message);
    }
  };

  const SubsetMatrix e = BuildE(b);
  const SubsetMatrix e_inv = BuildEInverse(b);
  const std::vector<Rational>& x = report.basic_open_masses;
  const std::vector<Rational>& y = report.atom_masses;

  std::vector<Rational> ey = e.Apply(y);
  for (std::uint32_t a = 0; a < dim && report.pass; ++a) {
    if (ey[a] != x[a]) fail(Mismatch("X = E·Y at X", b, a, x[a], ey[a]));
  }
  std::vector<Rational> einv_x = e_inv.Apply(x);
  for (std::uint32_t a = 0; a < dim && report.pass; ++a) {
    if (einv_x[a] != y[a]) fail(Mismatch("Y = E⁻¹·X at Y", b, a, y[a], einv_x[a]));
  }
  if (!report.pass) return report;

  SubsetMatrix expected_n(dim);
  {
    std::vector<std::map<std::size_t, Rational>> rows(dim);
    std::size_t i = 0;
    for (const auto& [s, w] : mu) {
      for (std::uint32_t c = 0; c < dim; ++c) rows[traces[i] & c][c] += w;
      ++i;
    }
    for (std::size_t r = 0; r < dim; ++r) {
      for (auto& [c, v] : rows[r]) expected_n.Append(r, c, std::move(v));
    }
  }
  SubsetMatrix n = e_inv * SubsetMatrix::Diagonal(x) * e;
  if (!(n == expected_n)) {
    for (std::uint32_t r = 0; r < dim && report.pass; ++r) {
      for (std::uint32_t c = 0; c < dim && report.pass; ++c) {
        Rational want = expected_n.At(r, c);
        Rational got = n.At(r, c);
        if (want != got) {
          fail("N = E⁻¹·M·E at N[" + DebugString(b.Subset(r)) + "," +
               DebugString(b.Subset(c)) + "]: expected " + FormatFraction(want) +
               ", got " + FormatFraction(got));
        }
      }
    }
  }
  return report;
}

ExtensionReport ExtensionCheck(const FiniteBasis& b,
                               const std::map<HistSet, Rational>& vals) {
  const std::size_t dim = b.subset_count();
  std::vector<Rational> x(dim);
  for (std::uint32_t a = 0; a < dim; ++a) {
    HistSet subset = b.Subset(a);
    auto it = vals.find(subset);
    if (it == vals.end()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "no value given for the basic open of " + DebugString(subset));
    }
    x[a] = it->second;
  }
  if (x[0] != 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "the basic open of the empty set must have value 1, got " +
                    FormatFraction(x[0]));
  }
  ExtensionReport report;
  report.atom_values = BuildEInverse(b).Apply(x);
  for (std::uint32_t a = 0; a < dim; ++a) {
    if (report.atom_values[a] < 0) {
      report.extends = false;
      report.violated_atom = b.Subset(a);
      report.violated_value = report.atom_values[a];
      break;
    }
  }
  return report;
}

Dist Restrict(const Dist& mu, const HistSet& b) {
  DistBuilder builder;
  for (const auto& [s, w] : mu) builder.Add(s.Intersection(b), w);
  return std::move(builder).Build();
}

}  // namespace probnetkat
