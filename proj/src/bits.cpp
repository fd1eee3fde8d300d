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

#include "nlgame/bits.hpp"

#include <bit>

#include "nlgame/errors.hpp"

namespace nlgame {

BitString::BitString(std::string_view text) {
    bits_.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw ArgumentError("bit string may only contain '0' and '1': '" + std::string(text) +
                                "'");
        }
        bits_.push_back(static_cast<std::uint8_t>(c - '0'));
    }
}

BitString BitString::from_uint(std::uint64_t value, std::size_t width) {
    if (width < 64 && (value >> width) != 0) {
        throw ArgumentError("value " + std::to_string(value) + " does not fit in " +
                            std::to_string(width) + " bits");
    }
    BitString out;
    for (std::size_t i = width; i-- > 0;) {
        out.push_back(i < 64 ? static_cast<int>((value >> i) & 1U) : 0);
    }
    return out;
}

BitString BitString::single(int bit) {
    BitString out;
    out.push_back(bit);
    return out;
}

void BitString::push_back(int bit) {
    if (bit != 0 && bit != 1) {
        throw ArgumentError("bit must be 0 or 1");
    }
    bits_.push_back(static_cast<std::uint8_t>(bit));
}

void BitString::append(const BitString& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

std::uint64_t BitString::to_uint() const {
    if (bits_.size() > 64) {
        throw ArgumentError("bit string too long for a 64-bit integer");
    }
    std::uint64_t v = 0;
    for (auto b : bits_) {
        v = (v << 1) | b;
    }
    return v;
}

std::string BitString::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) {
        s.push_back(static_cast<char>('0' + b));
    }
    return s;
}

int ceil_log2(std::uint64_t n) {
    if (n == 0) {
        throw ArgumentError("ceil_log2(0) is undefined");
    }
    return n == 1 ? 0 : static_cast<int>(std::bit_width(n - 1));
}

}  // namespace nlgame
