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

#include "nlgame/rational.hpp"

#include <iomanip>
#include <limits>
#include <sstream>

#include "nlgame/errors.hpp"

namespace nlgame {

std::string to_fraction_string(const Rational& r) {
    if (r.denominator() == 1) {
        return std::to_string(r.numerator());
    }
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string to_decimal_string(double x) {
    std::ostringstream out;
    out << std::setprecision(12) << x;
    return out.str();
}

std::string to_decimal_string(const Rational& r) { return to_decimal_string(to_double(r)); }

Rational parse_rational(const std::string& text) {
    auto parse_int = [&](const std::string& part) -> std::int64_t {
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(part, &used);
        } catch (const std::exception&) {
            throw ArgumentError("malformed rational: '" + text + "'");
        }
        if (used != part.size()) {
            throw ArgumentError("malformed rational: '" + text + "'");
        }
        return v;
    };
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        return Rational(parse_int(text));
    }
    std::int64_t den = parse_int(text.substr(slash + 1));
    if (den == 0) {
        throw ArgumentError("zero denominator: '" + text + "'");
    }
    return Rational(parse_int(text.substr(0, slash)), den);
}

}  // namespace nlgame
