// Copyright 2026 The nlgame Authors
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

#ifndef NLGAME_RATIONAL_HPP
#define NLGAME_RATIONAL_HPP

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace boost {

// Under C++20 rewritten comparisons the generic rational == Arg template
// resolves to itself and recurses. These exact matches win overload
// resolution and route through the member comparison.
inline bool operator==(const rational<std::int64_t>& a, int b) { return a.operator==(std::int64_t{b}); }
inline bool operator==(int b, const rational<std::int64_t>& a) { return a.operator==(std::int64_t{b}); }
inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) { return a.operator==(b); }
inline bool operator==(std::int64_t b, const rational<std::int64_t>& a) { return a.operator==(b); }

}  // namespace boost

namespace nlgame {

using Rational = boost::rational<std::int64_t>;

/// "p/q" (or "p" when q == 1).
std::string to_fraction_string(const Rational& r);

/// Decimal rendering with 12 significant digits.
std::string to_decimal_string(const Rational& r);

/// Decimal rendering with 12 significant digits.
std::string to_decimal_string(double x);

double to_double(const Rational& r);

/// Parses "p/q" or "p". Throws ArgumentError on malformed input.
Rational parse_rational(const std::string& text);

}  // namespace nlgame

#endif  // NLGAME_RATIONAL_HPP
