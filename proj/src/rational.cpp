// Copyright 2026 The gapsieve Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gapsieve/rational.hpp"

#include <cstdlib>

namespace gapsieve {

Rational to_rational(const WideUint& value) { return Rational(to_bigint(value)); }

BigInt to_bigint(const WideUint& value) {
  // Two 64-bit halves; gmp has no native 128-bit constructor.
  const auto high = static_cast<std::uint64_t>(value >> 64);
  const auto low = static_cast<std::uint64_t>(value & WideUint(~std::uint64_t{0}));
  BigInt result = high;
  result <<= 64;
  result += low;
  return result;
}

std::string to_string(const Rational& value) { return value.str(); }

std::string to_decimal(const Rational& value, int digits) {
  if (digits < 0) digits = 0;
  const bool negative = value < 0;
  const Rational magnitude = negative ? Rational(-value) : value;

  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const BigInt num = boost::multiprecision::numerator(magnitude) * scale;
  const BigInt den = boost::multiprecision::denominator(magnitude);
  BigInt rounded = num / den;
  if ((num % den) * 2 >= den) rounded += 1;

  std::string text = rounded.str();
  if (digits > 0) {
    if (text.size() <= static_cast<std::size_t>(digits)) {
      text.insert(0, static_cast<std::size_t>(digits) + 1 - text.size(), '0');
    }
    text.insert(text.size() - static_cast<std::size_t>(digits), 1, '.');
  }
  if (negative && rounded != 0) text.insert(0, 1, '-');
  return text;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace gapsieve
