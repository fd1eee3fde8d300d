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

#ifndef NLGAME_BITS_HPP
#define NLGAME_BITS_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nlgame {

/// A finite string of bits. The empty string doubles as the
/// "no output" marker (epsilon).
class BitString {
   public:
    BitString() = default;
    /// Parses a string of '0'/'1' characters. Throws ArgumentError otherwise.
    explicit BitString(std::string_view text);

    /// `width` bits of `value`, most significant first.
    static BitString from_uint(std::uint64_t value, std::size_t width);
    static BitString single(int bit);

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    int operator[](std::size_t i) const { return bits_[i]; }

    void push_back(int bit);
    void append(const BitString& other);

    /// Reads the bits as an unsigned integer, most significant first.
    std::uint64_t to_uint() const;
    std::string to_string() const;

    friend auto operator<=>(const BitString&, const BitString&) = default;
    friend bool operator==(const BitString&, const BitString&) = default;

   private:
    std::vector<std::uint8_t> bits_;
};

/// ceil(log2(n)) for n >= 1.
int ceil_log2(std::uint64_t n);

}  // namespace nlgame

#endif  // NLGAME_BITS_HPP
