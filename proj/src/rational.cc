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

#include "probnetkat/rational.h"

#include <cctype>
#include <string>
#include <string_view>

#include "probnetkat/error.h"

namespace probnetkat {
namespace {

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void Malformed(std::string_view text) {
  throw Error(ErrorKind::kInvalidArgument,
              "malformed rational literal '" + std::string(text) + "'");
}

}  // namespace

Rational ParseRational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!AllDigits(num) || !AllDigits(den)) Malformed(text);
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) {
      throw Error(ErrorKind::kInvalidArgument,
                  "zero denominator in '" + std::string(text) + "'");
    }
    result = Rational(n, d);
    result.canonicalize();
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) Malformed(text);
    if (!whole.empty() && !AllDigits(whole)) Malformed(text);
    if (!frac.empty() && !AllDigits(frac)) Malformed(text);
    mpz_class n(whole.empty() ? std::string("0") : std::string(whole), 10);
    mpz_class scale = 1;
    for (char c : frac) {
      n = n * 10 + (c - '0');
      scale *= 10;
    }
    result = Rational(n, scale);
    result.canonicalize();
  } else {
    if (!AllDigits(s)) Malformed(text);
    result = Rational(mpz_class(std::string(s), 10));
  }
  return negative ? Rational(-result) : result;
}

std::string FormatFraction(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double ToDouble(const Rational& value) { return value.get_d(); }

bool InUnitInterval(const Rational& value) { return value >= 0 && value <= 1; }

std::string FormatExtended(const ExtendedRational& value) {
  return value.infinite ? std::string("inf") : FormatFraction(value.value);
}

}  // namespace probnetkat
