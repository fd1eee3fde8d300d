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

#include "nlgame/qsim.hpp"

#include <random>

#include <gtest/gtest.h>

#include "nlgame/errors.hpp"
#include "nlgame/random.hpp"
#include "oracles.hpp"

namespace {

using namespace nlgame;
using namespace nlgame::qsim;

constexpr std::array<MeasBasis, 3> kBases = {MeasBasis::Computational, MeasBasis::Diagonal,
                                             MeasBasis::Circular};

/// Always picks the given outcome (must have positive probability).
class Forced final : public OutcomeSource {
   public:
    explicit Forced(std::size_t pick) : pick_(pick) {}
    std::size_t choose(std::span<const Rational> p) override {
        if (p[pick_] == 0) throw std::logic_error("forced a zero-probability outcome");
        return pick_;
    }

   private:
    std::size_t pick_;
};

/// Random product of basis states and small GHZ blocks.
StateVector random_state(std::mt19937_64& gen, int n) {
    auto pick = [&](int hi) { return static_cast<int>(gen() % static_cast<std::uint64_t>(hi)); };
    std::optional<StateVector> state;
    int used = 0;
    while (used < n) {
        StateVector part = (n - used >= 2 && pick(3) == 0) ? make_ghz(std::min(n - used, 2 + pick(3)))
                                                           : basis_state(kBases[static_cast<std::size_t>(pick(3))], pick(2));
        used += part.num_qubits();
        state = state ? tensor_product(*state, part) : part;
    }
    return *state;
}

TEST(GaussianInt, Arithmetic) {
    GaussianInt a{3, -2};
    GaussianInt b{1, 4};
    EXPECT_EQ(a + b, (GaussianInt{4, 2}));
    EXPECT_EQ(a - b, (GaussianInt{2, -6}));
    EXPECT_EQ(a * b, (GaussianInt{11, 10}));
    EXPECT_EQ(norm_squared(a), 13);
}

TEST(GaussianInt, OverflowIsReported) {
    GaussianInt big{std::int64_t{1} << 40, 0};
    EXPECT_THROW(big * big, ExactnessError);
    EXPECT_THROW(norm_squared(big), ExactnessError);
}

TEST(ExactAmplitude, CanonicalForm) {
    ExactAmplitude a(2, 2, 3);
    EXPECT_EQ(a.re_int(), 1);
    EXPECT_EQ(a.im_int(), 1);
    EXPECT_EQ(a.sqrt2_scale(), 1);
    EXPECT_EQ(ExactAmplitude(0, 0, 7).sqrt2_scale(), 0);
    EXPECT_EQ(a.squared_magnitude(), Rational(1));
    EXPECT_EQ(ExactAmplitude(1, 0, 1) * ExactAmplitude(1, 0, 1), ExactAmplitude(1, 0, 2));
    EXPECT_EQ(ExactAmplitude(1, 0, 2) + ExactAmplitude(1, 0, 2), ExactAmplitude(1, 0, 0));
    EXPECT_THROW(ExactAmplitude(1, 0, -1), ArgumentError);
}

TEST(ExactAmplitude, OddScaleSumIsNotRepresentable) {
    EXPECT_THROW(ExactAmplitude(1, 0, 1) + ExactAmplitude(1, 0, 0), ExactnessError);
}

TEST(StateVector, GhzAmplitudes) {
    for (int n = 1; n <= 10; ++n) {
        StateVector ghz = make_ghz(n);
        EXPECT_EQ(ghz.squared_norm(), Rational(1));
        EXPECT_EQ(ghz.amplitude(0), ExactAmplitude(1, 0, 1));
        EXPECT_EQ(ghz.amplitude(ghz.dimension() - 1), ExactAmplitude(1, 0, 1));
        for (std::size_t i = 1; i + 1 < ghz.dimension(); ++i) EXPECT_TRUE(ghz.amplitude(i).is_zero());
    }
    EXPECT_EQ(make_ghz(3).debug_dump(), "000 1 0 1\n111 1 0 1\n");
}

TEST(StateVector, QubitCap) {
    EXPECT_THROW(make_ghz(21), SizeError);
    EXPECT_THROW(make_ghz(0), SizeError);
    EXPECT_THROW(make_ghz(5, 4), SizeError);
    EXPECT_NO_THROW(make_ghz(5, 5));
}

TEST(StateVector, RejectsUnnormalized) {
    EXPECT_THROW(StateVector::from_raw(1, 0, {{1, 0}, {1, 0}}), ExactnessError);
    EXPECT_THROW(StateVector::from_raw(1, 0, {{1, 0}}), ArgumentError);
    std::vector<ExactAmplitude> mixed{ExactAmplitude(1, 0, 1), ExactAmplitude(1, 0, 2)};
    EXPECT_THROW(StateVector(1, mixed), ExactnessError);
}

TEST(StateVector, BasisStatesAreOrthonormal) {
    for (auto basis : kBases) {
        for (int b = 0; b < 2; ++b) {
            StateVector s = basis_state(basis, b);
            for (int c = 0; c < 2; ++c) {
                QubitOutcome o{1, basis, c};
                EXPECT_EQ(outcome_probability(s, std::span(&o, 1)), Rational(b == c ? 1 : 0));
            }
            for (auto other : kBases) {
                if (other == basis) continue;
                QubitOutcome o{1, other, 0};
                EXPECT_EQ(outcome_probability(s, std::span(&o, 1)), Rational(1, 2));
            }
        }
    }
}

TEST(Measurement, GhzDiagonalParity) {
    // Every qubit of GHZ_n in the diagonal basis: only even numbers of 1s,
    // each with probability 2^-(n-1).
    for (int n = 2; n <= 6; ++n) {
        StateVector ghz = make_ghz(n);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            std::vector<QubitOutcome> outs;
            for (int q = 1; q <= n; ++q) {
                outs.push_back({q, MeasBasis::Diagonal, static_cast<int>((mask >> (n - q)) & 1U)});
            }
            Rational expected = std::popcount(mask) % 2 == 0 ? Rational(1, std::int64_t{1} << (n - 1)) : Rational(0);
            EXPECT_EQ(outcome_probability(ghz, outs), expected) << "n=" << n << " mask=" << mask;
        }
    }
}

TEST(Measurement, CollapseKeepsAllQubits) {
    StateVector ghz = make_ghz(3);
    Forced pick_one(1);
    MeasurementResult r = measure_qubit(ghz, 2, MeasBasis::Diagonal, pick_one);
    EXPECT_EQ(r.outcome, 1);
    EXPECT_EQ(r.probability, Rational(1, 2));
    EXPECT_EQ(r.collapsed.num_qubits(), 3);
    EXPECT_EQ(r.collapsed.squared_norm(), Rational(1));
    QubitOutcome again{2, MeasBasis::Diagonal, 1};
    EXPECT_EQ(outcome_probability(r.collapsed, std::span(&again, 1)), Rational(1));
}

TEST(Measurement, NonDyadicRenormalizationThrows) {
    // |amplitudes|^2 = 9,1,...,1 over 16: P(qubit 1 = 0) = 3/4.
    std::vector<GaussianInt> v{{3, 0}, {1, 0}, {1, 0}, {1, 0}, {1, 0}, {1, 0}, {1, 0}, {1, 0}};
    StateVector s = StateVector::from_raw(3, 4, v);
    Forced zero(0);
    EXPECT_THROW(measure_qubit(s, 1, MeasBasis::Computational, zero), ExactnessError);
    QubitOutcome o{1, MeasBasis::Computational, 0};
    EXPECT_EQ(outcome_probability(s, std::span(&o, 1)), Rational(3, 4));
}

TEST(Measurement, InvalidIndices) {
    StateVector ghz = make_ghz(3);
    Forced zero(0);
    EXPECT_THROW(measure_qubit(ghz, 0, MeasBasis::Diagonal, zero), ArgumentError);
    EXPECT_THROW(measure_qubit(ghz, 4, MeasBasis::Diagonal, zero), ArgumentError);
    std::vector<QubitOutcome> dup{{1, MeasBasis::Diagonal, 0}, {1, MeasBasis::Circular, 0}};
    EXPECT_THROW(outcome_probability(ghz, dup), ArgumentError);
}

TEST(Measurement, BranchEnumerationSumsToOne) {
    StateVector ghz = make_ghz(4);
    BranchEnumerator branches;
    Rational total = 0;
    do {
        StateVector s = ghz;
        for (int q = 1; q <= 4; ++q) s = measure_qubit(s, q, MeasBasis::Circular, branches).collapsed;
        total += branches.branch_probability();
    } while (branches.advance());
    EXPECT_EQ(total, Rational(1));
    EXPECT_EQ(branches.branches_visited(), 8U);
}

TEST(MeasurementProperty, ProbabilitiesMatchBruteForce) {
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(gen() % 6);
        StateVector s = random_state(gen, n);
        std::vector<QubitOutcome> ours;
        std::vector<oracle::Outcome> theirs;
        for (int q = 1; q <= n; ++q) {
            if (gen() % 2 == 0) continue;
            auto basis = kBases[gen() % 3];
            int bit = static_cast<int>(gen() % 2);
            ours.push_back({q, basis, bit});
            theirs.push_back({q, basis, bit});
        }
        std::shuffle(ours.begin(), ours.end(), gen);
        ASSERT_EQ(outcome_probability(s, ours), oracle::probability(s, theirs)) << s.debug_dump();
    }
}

TEST(MeasurementProperty, CollapseMatchesConditionalProbability) {
    std::mt19937_64 gen(77);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(gen() % 5);
        StateVector s = random_state(gen, n);
        const int q1 = 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(n));
        int q2 = 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(n - 1));
        if (q2 >= q1) ++q2;
        const auto b1 = kBases[gen() % 3];
        const auto b2 = kBases[gen() % 3];
        Rng rng(static_cast<std::uint64_t>(trial));
        SampledOutcomes sampler(rng);
        MeasurementResult r = measure_qubit(s, q1, b1, sampler);
        ASSERT_EQ(r.collapsed.squared_norm(), Rational(1));
        ASSERT_EQ(r.probability, oracle::probability(s, {{q1, b1, r.outcome}}));
        for (int bit = 0; bit < 2; ++bit) {
            QubitOutcome o{q2, b2, bit};
            Rational joint = oracle::probability(s, {{q1, b1, r.outcome}, {q2, b2, bit}});
            ASSERT_EQ(outcome_probability(r.collapsed, std::span(&o, 1)), joint / r.probability);
        }
    }
}

TEST(MeasurementProperty, OutcomesSumToOne) {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(gen() % 7);
        StateVector s = random_state(gen, n);
        const int q = 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(n));
        const auto basis = kBases[gen() % 3];
        QubitOutcome zero{q, basis, 0};
        QubitOutcome one{q, basis, 1};
        ASSERT_EQ(outcome_probability(s, std::span(&zero, 1)) + outcome_probability(s, std::span(&one, 1)),
                  Rational(1));
    }
}

}  // namespace
