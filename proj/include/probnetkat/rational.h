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

#ifndef PROBNETKAT_RATIONAL_H_
#define PROBNETKAT_RATIONAL_H_

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace probnetkat {

// Exact arbitrary-precision rational. GMP keeps values canonical (reduced,
// positive denominator), so structural equality is value equality.
using Rational = mpq_class;

// Accepts "n", "n/d" and finite decimals such as "0.125" or "-.5"; decimals
// are converted exactly. Throws Error(kInvalidArgument) on malformed input.
Rational ParseRational(std::string_view text);

// Always "num/den", e.g. "7/16", "1/1", "0/1".
std::string FormatFraction(const Rational& value);

double ToDouble(const Rational& value);

bool InUnitInterval(const Rational& value);

// A nonnegative rational or +infinity, the codomain of random variables.
struct ExtendedRational {
  bool infinite = false;
  Rational value = 0;

  static ExtendedRational Infinity() { return {true, 0}; }
  static ExtendedRational Finite(Rational v) { return {false, std::move(v)}; }

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.value == b.value;
  }
  friend bool operator<=(const ExtendedRational& a, const ExtendedRational& b) {
    if (b.infinite) return true;
    if (a.infinite) return false;
    return a.value <= b.value;
  }
};

std::string FormatExtended(const ExtendedRational& value);

}  // namespace probnetkat

#endif  // PROBNETKAT_RATIONAL_H_
