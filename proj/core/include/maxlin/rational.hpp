// Copyright 2026 The maxlin Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MAXLIN_RATIONAL_HPP_
#define MAXLIN_RATIONAL_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace boost {

// Under C++20 rewritten comparisons, boost's mixed `integer == rational`
// template selects its own reversed form and recurses forever. Plain
// overloads win overload resolution over both templates.
#define MAXLIN_RATIONAL_EQ(T)                                            \
  constexpr bool operator==(const rational<std::int64_t>& a, T b) {      \
    return a == rational<std::int64_t>(static_cast<std::int64_t>(b));   \
  }
MAXLIN_RATIONAL_EQ(int)
MAXLIN_RATIONAL_EQ(long)
MAXLIN_RATIONAL_EQ(long long)
MAXLIN_RATIONAL_EQ(unsigned)
MAXLIN_RATIONAL_EQ(unsigned long)
MAXLIN_RATIONAL_EQ(unsigned long long)
#undef MAXLIN_RATIONAL_EQ

}  // namespace boost

namespace maxlin {

using Rational = boost::rational<std::int64_t>;

// Canonical text form "num/den" with den >= 1, e.g. "-1/2", "5/1".
std::string to_string(const Rational& r);

// Accepts "num/den" or a bare integer. Throws InvalidArgument otherwise.
Rational parse_rational(std::string_view text);

std::int64_t floor(const Rational& r);
std::int64_t ceil(const Rational& r);

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

std::int64_t gcd(std::int64_t a, std::int64_t b);
// Throws Error when the result overflows.
std::int64_t lcm(std::int64_t a, std::int64_t b);

double to_double(const Rational& r);

}  // namespace maxlin

#endif  // MAXLIN_RATIONAL_HPP_
