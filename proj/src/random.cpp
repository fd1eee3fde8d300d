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

#include "nlgame/random.hpp"

#include <numeric>

#include "nlgame/errors.hpp"

namespace nlgame {

namespace {

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t stream) {
    return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(stream),
                         static_cast<std::uint32_t>(stream >> 32)};
}

void check_distribution(std::span<const Rational> probabilities) {
    if (probabilities.empty()) {
        throw ArgumentError("empty outcome distribution");
    }
    Rational total = 0;
    for (const auto& p : probabilities) {
        if (p < 0) {
            throw ArgumentError("negative outcome probability");
        }
        total += p;
    }
    if (total != 1) {
        throw ArgumentError("outcome probabilities sum to " + to_fraction_string(total));
    }
}

}  // namespace

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
    auto seq = make_seed_seq(seed, stream);
    engine_.seed(seq);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) {
        throw ArgumentError("Rng::below requires a positive bound");
    }
    // Reject the low (2^64 mod bound) values so every residue is equally likely.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        std::uint64_t x = engine_();
        if (x >= threshold) {
            return x % bound;
        }
    }
}

std::size_t SampledOutcomes::choose(std::span<const Rational> probabilities) {
    check_distribution(probabilities);
    std::int64_t common = 1;
    for (const auto& p : probabilities) {
        common = std::lcm(common, p.denominator());
    }
    auto draw = static_cast<std::int64_t>(rng_->below(static_cast<std::uint64_t>(common)));
    std::int64_t cumulative = 0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        cumulative += probabilities[i].numerator() * (common / probabilities[i].denominator());
        if (draw < cumulative) {
            return i;
        }
    }
    // Unreachable when the distribution sums to one.
    throw ArgumentError("outcome sampling fell off the distribution");
}

std::size_t BranchEnumerator::choose(std::span<const Rational> probabilities) {
    if (depth_ < path_.size()) {
        const Choice& c = path_[depth_];
        if (!std::equal(c.probabilities.begin(), c.probabilities.end(), probabilities.begin(),
                        probabilities.end())) {
            throw ArgumentError("branch replay diverged: different distribution at same depth");
        }
        ++depth_;
        return c.picked;
    }
    check_distribution(probabilities);
    std::size_t first = 0;
    while (probabilities[first] == 0) {
        ++first;
    }
    path_.push_back(Choice{first, {probabilities.begin(), probabilities.end()}});
    ++depth_;
    return first;
}

bool BranchEnumerator::advance() {
    path_.resize(depth_);
    depth_ = 0;
    while (!path_.empty()) {
        Choice& c = path_.back();
        std::size_t next = c.picked + 1;
        while (next < c.probabilities.size() && c.probabilities[next] == 0) {
            ++next;
        }
        if (next < c.probabilities.size()) {
            c.picked = next;
            ++visited_;
            return true;
        }
        path_.pop_back();
    }
    return false;
}

Rational BranchEnumerator::branch_probability() const {
    Rational p = 1;
    for (std::size_t i = 0; i < depth_ && i < path_.size(); ++i) {
        p *= path_[i].probabilities[path_[i].picked];
    }
    return p;
}

}  // namespace nlgame
