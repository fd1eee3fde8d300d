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

#ifndef NLGAME_RANDOM_HPP
#define NLGAME_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "nlgame/rational.hpp"

namespace nlgame {

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Seeded generator used everywhere reports must be reproducible.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Bounded draws use rejection sampling (never
/// std::uniform_int_distribution, whose algorithm is implementation-defined),
/// so a given seed yields the same numbers with every standard library.
/// Per-trial streams are derived with std::seed_seq over (seed, stream), which
/// is also fully specified.
class Rng {
   public:
    explicit Rng(std::uint64_t seed = kDefaultSeed);
    Rng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

   private:
    std::mt19937_64 engine_;
};

/// Source of randomness for probabilistic choices with exact probabilities.
///
/// choose() receives a probability vector summing to 1 and returns the index
/// of the selected outcome. Zero-probability outcomes are never returned.
class OutcomeSource {
   public:
    virtual ~OutcomeSource() = default;
    virtual std::size_t choose(std::span<const Rational> probabilities) = 0;
};

/// Samples outcomes exactly: draws a uniform integer below the common
/// denominator and walks the cumulative numerators.
class SampledOutcomes final : public OutcomeSource {
   public:
    explicit SampledOutcomes(Rng& rng) : rng_(&rng) {}
    std::size_t choose(std::span<const Rational> probabilities) override;

   private:
    Rng* rng_;
};

/// Depth-first enumeration of every positive-probability branch of a
/// randomized computation. The computation is re-run once per branch:
///
///     BranchEnumerator branches;
///     do {
///         run(branches);
///         total += branches.branch_probability() * value;
///     } while (branches.advance());
///
/// Replays must ask the same questions in the same order; a mismatch throws
/// ArgumentError.
class BranchEnumerator final : public OutcomeSource {
   public:
    std::size_t choose(std::span<const Rational> probabilities) override;

    /// Moves to the next unexplored branch. Returns false when all branches
    /// have been visited.
    bool advance();

    /// Exact probability of the branch taken by the most recent run.
    Rational branch_probability() const;

    std::size_t branches_visited() const { return visited_; }

   private:
    struct Choice {
        std::size_t picked;
        std::vector<Rational> probabilities;
    };
    std::vector<Choice> path_;
    std::size_t depth_ = 0;
    std::size_t visited_ = 1;
};

}  // namespace nlgame

#endif  // NLGAME_RANDOM_HPP
