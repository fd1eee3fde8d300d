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

#include "nlgame/bounds.hpp"

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "nlgame/errors.hpp"
#include "nlgame/strategies.hpp"
#include "oracles.hpp"

namespace {

using namespace nlgame;
using namespace nlgame::bounds;

TEST(AtomSearch, KnownMinima) {
    EXPECT_EQ(exhaustive_min_loss(5).min_loss, Rational(1, 10));
    EXPECT_EQ(exhaustive_min_loss(8).min_loss, Rational(1, 7));
    EXPECT_THROW(exhaustive_min_loss(4), SizeError);
    EXPECT_THROW(exhaustive_min_loss(13), SizeError);
}

TEST(AtomSearch, AgreesWithFullEnumeration) {
    for (int n = 5; n <= 9; ++n) {
        auto ours = exhaustive_min_loss(n);
        auto theirs = oracle::atom_brute_force(n);
        EXPECT_EQ(ours.min_loss, theirs.min_loss) << n;
        auto a = ours.argmin;
        auto b = theirs.argmin_profiles;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        EXPECT_EQ(a, b) << n;
        for (const auto& p : a) {
            EXPECT_LE(*std::max_element(p.begin(), p.end()) - *std::min_element(p.begin(), p.end()), 1);
        }
    }
}

TEST(AtomSearch, ProfileLoss) {
    EXPECT_EQ(profile_loss({2, 1, 1, 1}), Rational(1, 10));
    EXPECT_EQ(profile_loss({0, 0, 1, 1}), Rational(0));
    EXPECT_EQ(profile_loss({0, 0, 3, 0}), Rational(1));
    EXPECT_THROW(profile_loss({1, 0, 0, 0}), SizeError);
}

TEST(SimpleTables, Existence) {
    EXPECT_FALSE(simple_table_exists(5, 2));
    EXPECT_TRUE(simple_table_exists(5, 3));
    EXPECT_TRUE(simple_table_exists(4, 2));
    EXPECT_FALSE(simple_table_exists(3, 1));
    EXPECT_TRUE(simple_table_exists(2, 1));
    EXPECT_THROW(simple_table_exists(5, 0), SizeError);
    EXPECT_THROW(min_transcripts_simple(17), SizeError);
}

TEST(SimpleTables, MinimumIsCeilLog2) {
    for (int n = 2; n <= 12; ++n) {
        EXPECT_EQ(min_transcripts_simple(n), ceil_log2(static_cast<std::uint64_t>(n))) << n;
    }
}

TEST(GF2, ConditionAgreesWithGrayCodeOracle) {
    std::mt19937_64 gen(31337);
    for (int trial = 0; trial < 400; ++trial) {
        const int n = 1 + static_cast<int>(gen() % 12);
        const int l = 1 + static_cast<int>(gen() % 6);
        std::vector<std::uint64_t> v;
        for (int i = 0; i < n; ++i) v.push_back(gen() & ((std::uint64_t{1} << l) - 1));
        ASSERT_EQ(check_gf2_condition(GF2Family(l, v)), oracle::gray_code_condition(v));
    }
}

TEST(GF2, EdgeFamilies) {
    EXPECT_TRUE(check_gf2_condition(GF2Family(1, {0})));
    EXPECT_FALSE(check_gf2_condition(GF2Family(2, {1, 1})));
    EXPECT_TRUE(check_gf2_condition(GF2Family(3, {1, 2, 3, 4, 5, 6})));
    // Six distinct vectors with zero sum.
    EXPECT_FALSE(check_gf2_condition(GF2Family(4, {0, 1, 2, 4, 8, 15})));
    EXPECT_THROW(GF2Family(2, {4}), ArgumentError);
    EXPECT_THROW(GF2Family(0, {0}), SizeError);
}

TEST(GF2, SearchResultsAreValid) {
    for (int n = 2; n <= 9; ++n) {
        for (int l = 1; l <= 5; ++l) {
            auto f = find_gf2_family(n, l);
            if (!f) continue;
            EXPECT_EQ(f->size(), n);
            EXPECT_TRUE(oracle::gray_code_condition(f->vectors()));
            EXPECT_TRUE(std::is_sorted(f->vectors().begin(), f->vectors().end()));
        }
    }
    EXPECT_FALSE(find_gf2_family(5, 2).has_value());
}

/// Minimal dimension by trying every n-subset of distinct vectors; only for
/// small sizes.
int brute_min_dimension(int n) {
    for (int l = 1;; ++l) {
        const int space = 1 << l;
        if (space < n) continue;
        std::vector<int> pick(static_cast<std::size_t>(space), 0);
        std::fill(pick.end() - n, pick.end(), 1);
        do {
            std::vector<std::uint64_t> v;
            for (int x = 0; x < space; ++x) {
                if (pick[static_cast<std::size_t>(x)]) v.push_back(static_cast<std::uint64_t>(x));
            }
            if (oracle::gray_code_condition(v)) return l;
        } while (std::next_permutation(pick.begin(), pick.end()));
    }
}

TEST(GF2, MinimumDimensionAgreesWithBruteForce) {
    for (int n = 2; n <= 10; ++n) {
        EXPECT_EQ(min_dimension_general(n), brute_min_dimension(n)) << n;
    }
}

TEST(GF2, ParseAndPrint) {
    GF2Family f = GF2Family::parse("# family\n001\n  010 \n\n100 # tail\n");
    EXPECT_EQ(f.dimension(), 3);
    EXPECT_EQ(f.vectors(), (std::vector<std::uint64_t>{1, 2, 4}));
    EXPECT_EQ(f.to_text(), "001\n010\n100\n");
    EXPECT_EQ(GF2Family::parse(f.to_text()).vectors(), f.vectors());
    EXPECT_THROW(GF2Family::parse("01\n011\n"), ArgumentError);
    EXPECT_THROW(GF2Family::parse("0x1\n"), ArgumentError);
    EXPECT_THROW(GF2Family::parse("# nothing\n"), ArgumentError);
}

TEST(ResponseTables, LabelStrategy) {
    const int n = 6;
    auto s = strategies::classical_label_strategy(n);
    ResponseTable t = response_table_from_runs(games::make_general_game(n), *s);
    EXPECT_EQ(t.num_players(), n);
    EXPECT_LE(t.length(), std::size_t{8});
    EXPECT_TRUE(check_gf2_condition(GF2Family::from_table(t)));
    EXPECT_THROW(response_table_from_runs(games::make_simple_game(5), *strategies::quantum_simple_strategy(5)),
                 ArgumentError);
}

TEST(LemmaChain, HoldsForSmallN) {
    for (int n = 2; n <= 10; ++n) {
        LemmaChainReport r = verify_lemma_chain(n);
        EXPECT_TRUE(r.all_hold()) << n;
        EXPECT_GE(static_cast<double>(r.l_min), r.bound);
    }
    EXPECT_THROW(verify_lemma_chain(11), SizeError);
}

}  // namespace
