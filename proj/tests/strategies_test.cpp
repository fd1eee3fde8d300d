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

#include "nlgame/strategies.hpp"

#include <random>

#include <gtest/gtest.h>

#include "nlgame/errors.hpp"
#include "oracles.hpp"

namespace {

using namespace nlgame;
using namespace nlgame::strategies;
using games::ComplexityMode;
using games::GameKind;

TEST(Atoms, Behaviour) {
    EXPECT_EQ(apply_atom(Atom::Const0, 1), 0);
    EXPECT_EQ(apply_atom(Atom::Const1, 0), 1);
    EXPECT_EQ(apply_atom(Atom::CopyHint, 1), 1);
    EXPECT_EQ(apply_atom(Atom::FlipHint, 1), 0);
    for (Atom a : kAllAtoms) EXPECT_EQ(parse_atom(to_string(a)), a);
    EXPECT_EQ(parse_atom("c"), Atom::CopyHint);
    EXPECT_THROW(parse_atom("x"), ArgumentError);
}

TEST(Atoms, PairsAndHints) {
    for (Atom a : kAllAtoms) EXPECT_TRUE(pair_always_loses(a, a));
    EXPECT_FALSE(pair_always_loses(Atom::CopyHint, Atom::FlipHint));
    EXPECT_FALSE(pair_always_loses(Atom::Const0, Atom::Const1));
    EXPECT_EQ(best_response_hint(Atom::Const0, Atom::CopyHint), 1);
    EXPECT_EQ(best_response_hint(Atom::Const1, Atom::CopyHint), 0);
    EXPECT_EQ(best_response_hint(Atom::Const0, Atom::FlipHint), 0);
    EXPECT_EQ(best_response_hint(Atom::CopyHint, Atom::CopyHint), 0);  // tie
}

TEST(Formula, KnownValues) {
    EXPECT_EQ(losing_probability_formula(5), Rational(1, 10));
    EXPECT_EQ(losing_probability_formula(6), Rational(2, 15));
    EXPECT_EQ(losing_probability_formula(8), Rational(1, 7));
    EXPECT_THROW(losing_probability_formula(4), DomainError);
}

TEST(Formula, MatchesBruteForceOverAllAssignments) {
    for (int n = 5; n <= 8; ++n) {
        EXPECT_EQ(losing_probability_formula(n), oracle::atom_brute_force(n).min_loss) << n;
    }
}

TEST(Formula, BalancedAssignmentAttainsIt) {
    for (int n = 5; n <= 60; ++n) {
        EXPECT_EQ(balanced_assignment(n).losing_probability(), losing_probability_formula(n)) << n;
    }
}

TEST(Assignment, Parsing) {
    EXPECT_EQ(parse_assignment("0,1,c,f,0").atoms(),
              (std::vector<Atom>{Atom::Const0, Atom::Const1, Atom::CopyHint, Atom::FlipHint, Atom::Const0}));
    EXPECT_EQ(parse_assignment("01cf0").atoms(), parse_assignment("const0,const1,copy,flip,const0").atoms());
    EXPECT_EQ(parse_assignment("balanced:6").atoms(), balanced_assignment(6).atoms());
    EXPECT_THROW(parse_assignment("0,1,z"), ArgumentError);
    EXPECT_THROW(parse_assignment("balanced:x"), ArgumentError);
}

TEST(Assignment, ExplicitHints) {
    std::vector<Atom> atoms{Atom::Const0, Atom::CopyHint, Atom::CopyHint};
    std::vector<std::vector<int>> hints(4, std::vector<int>(4, 0));
    StrategyAssignment a(atoms, hints);
    // (1,2) with hint 0 loses, (1,3) loses, (2,3) always loses.
    EXPECT_EQ(a.losing_probability(), Rational(1));
    EXPECT_EQ(StrategyAssignment(atoms).losing_probability(), Rational(1, 3));
    EXPECT_THROW(a.hint(2, 2), ArgumentError);
}

TEST(AtomStrategy, ExhaustiveLossEqualsAssignmentLoss) {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 3 + static_cast<int>(gen() % 6);
        std::vector<Atom> atoms;
        for (int i = 0; i < n; ++i) atoms.push_back(kAllAtoms[gen() % 4]);
        StrategyAssignment a(atoms);
        auto s = classical_atom_strategy_assignment(a);
        auto c = games::broadcast_complexity(games::make_simple_game(n), *s, ComplexityMode::exhaustive_mode());
        ASSERT_EQ(1 - c.win_rate, a.losing_probability());
        ASSERT_EQ(c.max_bits, 1U);
    }
}

TEST(AtomStrategy, MixedIsTheWeightedAverage) {
    StrategyAssignment good = balanced_assignment(5);
    StrategyAssignment bad(std::vector<Atom>(5, Atom::Const0));
    auto s = mixed_atom_strategy({{Rational(1, 4), good}, {Rational(3, 4), bad}});
    EXPECT_EQ(s->name(), "classical-mixed");
    auto c = games::broadcast_complexity(games::make_simple_game(5), *s, ComplexityMode::exhaustive_mode());
    EXPECT_EQ(1 - c.win_rate, Rational(1, 4) * Rational(1, 10) + Rational(3, 4));
    EXPECT_EQ(c.runs, 20U);
}

TEST(AtomStrategy, SimpleGameOnly) {
    auto s = make_strategy("classical-atoms:balanced", 6);
    EXPECT_TRUE(s->supports(GameKind::SimpleGame));
    EXPECT_FALSE(s->supports(GameKind::GeneralGame));
    EXPECT_THROW(make_strategy("classical-atoms:0,1,c", 6), ArgumentError);
    EXPECT_THROW(make_strategy("quantum-fancy", 6), ArgumentError);
}

// ---------------------------------------------------------------------------
// GHZ strategies

TEST(Ghz, ExactOutcomesMatchBruteForce) {
    for (int n = 2; n <= 6; ++n) {
        qsim::StateVector ghz = qsim::make_ghz(n);
        GhzParityStrategy s(n, true);
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
            // At n = 6 only the chosen sets the games use.
            if (n == 6 && std::popcount(mask) % 4 != 2) continue;
            std::vector<int> chosen;
            std::vector<int> remaining;
            for (int p = 1; p <= n; ++p) ((mask >> (p - 1)) & 1U ? chosen : remaining).push_back(p);
            QuantumOutcomeTable t = s.exact_outcomes(chosen);
            ASSERT_EQ(t.chosen, chosen);
            ASSERT_EQ(t.remaining, remaining);
            const std::size_t k = chosen.size();
            const std::size_t m = remaining.size();
            for (std::size_t r = 0; r < (std::size_t{1} << m); ++r) {
                std::vector<oracle::Outcome> outs;
                for (std::size_t i = 0; i < m; ++i) {
                    outs.push_back({remaining[i], qsim::MeasBasis::Diagonal, static_cast<int>((r >> (m - 1 - i)) & 1U)});
                }
                const int hint = m == 0 ? s.fallback_hint() : std::popcount(r) % 2;
                for (std::size_t c = 0; c < (std::size_t{1} << k); ++c) {
                    auto all = outs;
                    for (std::size_t i = 0; i < k; ++i) {
                        all.push_back({chosen[i], GhzParityStrategy::chosen_basis(hint),
                                       static_cast<int>((c >> (k - 1 - i)) & 1U)});
                    }
                    ASSERT_EQ(t.probability[r][c], oracle::probability(ghz, all))
                        << "n=" << n << " mask=" << mask << " r=" << r << " c=" << c;
                }
            }
        }
    }
}

TEST(Ghz, EngineRunsWinWithOneBit) {
    for (int n = 3; n <= 6; ++n) {
        auto c = games::broadcast_complexity(games::make_simple_game(n), *quantum_simple_strategy(n),
                                             ComplexityMode::exhaustive_mode());
        EXPECT_EQ(c.win_rate, Rational(1));
        EXPECT_TRUE(c.min_won);
        EXPECT_EQ(c.max_bits, 1U);
        // 2^(n-2) remaining branches times 2 chosen-output branches per pair.
        EXPECT_EQ(c.runs, games::make_simple_game(n).support_size() * (std::size_t{1} << (n - 1)));
    }
    for (int n = 2; n <= 7; ++n) {
        auto c = games::broadcast_complexity(games::make_general_game(n), *quantum_general_strategy(n),
                                             ComplexityMode::exhaustive_mode());
        EXPECT_EQ(c.win_rate, Rational(1)) << n;
        EXPECT_LE(c.max_bits, 1U);
    }
}

TEST(Ghz, HintIsNeeded) {
    // Chosen players measuring in a fixed basis lose half the time.
    GhzParityStrategy s(5, false);
    QuantumOutcomeTable t = s.exact_outcomes({1, 2});
    Rational lose_if_diagonal = 0;
    for (std::size_t r = 0; r < t.probability.size(); ++r) {
        if (std::popcount(r) % 2 == 0) lose_if_diagonal += t.branch_probability(r);
    }
    EXPECT_EQ(lose_if_diagonal, Rational(1, 2));
}

TEST(Ghz, Support) {
    EXPECT_TRUE(quantum_simple_strategy(5)->supports(GameKind::SimpleGame));
    EXPECT_FALSE(quantum_simple_strategy(5)->supports(GameKind::GeneralGame));
    EXPECT_TRUE(quantum_general_strategy(5)->supports(GameKind::SimpleGame));
    EXPECT_TRUE(quantum_general_strategy(2)->supports(GameKind::GeneralGame));
    EXPECT_THROW(quantum_simple_strategy(2), SizeError);
    EXPECT_THROW(GhzParityStrategy(5, true).exact_outcomes({1, 6}), ArgumentError);
}

// ---------------------------------------------------------------------------
// Labeling strategy

TEST(Labels, Table) {
    LabelTable t(5);
    EXPECT_EQ(t.width(), 3U);
    EXPECT_EQ(t.label(1), BitString("000"));
    EXPECT_EQ(t.label(5), BitString("100"));
    EXPECT_EQ(LabelTable(2).width(), 1U);
    EXPECT_EQ(LabelTable(8).width(), 3U);
    EXPECT_EQ(LabelTable(9).width(), 4U);
}

TEST(Labels, WinsEveryInstance) {
    for (int n = 2; n <= 11; ++n) {
        auto s = classical_label_strategy(n);
        for (auto spec : {games::make_general_game(n)}) {
            auto c = games::broadcast_complexity(spec, *s, ComplexityMode::exhaustive_mode());
            EXPECT_TRUE(c.min_won) << n;
            EXPECT_EQ(c.bits_histogram.size(), 1U);
            EXPECT_EQ(c.max_bits, static_cast<std::size_t>(ceil_log2(static_cast<std::uint64_t>(n))));
        }
        if (n >= 3) {
            auto c = games::broadcast_complexity(games::make_simple_game(n), *s, ComplexityMode::exhaustive_mode());
            EXPECT_TRUE(c.min_won) << n;
        }
    }
}

}  // namespace
