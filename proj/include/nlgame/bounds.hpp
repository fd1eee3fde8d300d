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

#ifndef NLGAME_BOUNDS_HPP
#define NLGAME_BOUNDS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlgame/bits.hpp"
#include "nlgame/games.hpp"
#include "nlgame/rational.hpp"

// Exhaustive, desk-scale verification of the classical lower-bound
// mechanisms: atom-assignment search, response tables (one row per player,
// one column per broadcast history) and GF(2) families.
namespace nlgame::bounds {

/// Row i, column r: player i's output bit when the broadcast history is m_r.
class ResponseTable {
   public:
    ResponseTable(std::vector<BitString> rows);

    int num_players() const { return static_cast<int>(rows_.size()); }
    std::size_t length() const { return length_; }
    const std::vector<BitString>& rows() const { return rows_; }
    int bit(int player, std::size_t column) const {
        return rows_.at(static_cast<std::size_t>(player - 1))[column];
    }

   private:
    std::vector<BitString> rows_;
    std::size_t length_;
};

/// n vectors over GF(2)^l, l <= 64, stored as machine words (first coordinate
/// in the most significant used bit).
class GF2Family {
   public:
    GF2Family(int dimension, std::vector<std::uint64_t> vectors);

    static GF2Family from_table(const ResponseTable& table);
    /// One vector per line as a 0/1 string; blank lines and '#' comments are
    /// skipped. Dimension is inferred from the line length.
    static GF2Family parse(std::string_view text);
    std::string to_text() const;

    int dimension() const { return dimension_; }
    int size() const { return static_cast<int>(vectors_.size()); }
    const std::vector<std::uint64_t>& vectors() const { return vectors_; }

   private:
    int dimension_;
    std::vector<std::uint64_t> vectors_;
};

/// Class sizes (Const0, Const1, CopyHint, FlipHint).
using AtomProfile = std::array<int, 4>;

struct AssignmentSearchResult {
    Rational min_loss;
    std::vector<AtomProfile> argmin;
};

/// Minimal probability, over all atom assignments with best-response hints,
/// that a uniformly chosen pair loses. Assignments are searched up to player
/// relabeling, i.e. over class-size profiles. Requires 5 <= n <= 12.
AssignmentSearchResult exhaustive_min_loss(int n);

/// Losing probability of a class-size profile under best-response hints.
Rational profile_loss(const AtomProfile& profile);

/// Whether some deterministic strategy with at most `l` broadcast histories
/// wins every simple-game instance, i.e. whether an n-row response table of
/// length l separates every pair. Pruned backtracking over sorted rows.
bool simple_table_exists(int n, int l);

/// Minimal l for which simple_table_exists(n, l). Requires 2 <= n <= 16.
int min_transcripts_simple(int n);

/// True iff every subset C with |C| = 2 (mod 4) has a nonzero GF(2) sum.
/// Requires n <= 24.
bool check_gf2_condition(const GF2Family& family);

/// A family of n vectors in dimension l satisfying the condition, with
/// vectors strictly increasing as integers, or nullopt if none exists.
std::optional<GF2Family> find_gf2_family(int n, int l);

/// Minimal l admitting a family that satisfies the condition. Requires
/// 2 <= n <= 10.
int min_dimension_general(int n);

/// sqrt(n) - 2.
double appendix_bound(int n);

/// Response table of a deterministic strategy, collected by playing every
/// instance of `spec`: columns are the distinct broadcast histories in order
/// of first appearance; cells never observed are 0.
ResponseTable response_table_from_runs(const games::GameSpec& spec, const games::Strategy& strategy);

struct LemmaChainReport {
    int n = 0;
    int l_min = 0;
    double bound = 0.0;
    bool bound_holds = false;
    double log2_l_min = 0.0;
    double broadcast_bound = 0.0;
    bool broadcast_bound_holds = false;
    std::size_t label_transcripts = 0;
    std::size_t label_upper_bound = 0;
    bool label_table_satisfies_condition = false;
    bool upper_bound_holds = false;

    bool all_hold() const {
        return bound_holds && broadcast_bound_holds && label_table_satisfies_condition &&
               upper_bound_holds;
    }
};

/// Compares the searched minimum dimension with sqrt(n) - 2, derives the
/// broadcast bound log2(l_min) >= log2(n)/2 - 2, and checks the upper bound
/// l_min <= |M| <= 2^ceil(log2 n) against the labeling strategy's transcript
/// set. Requires 2 <= n <= 10.
LemmaChainReport verify_lemma_chain(int n);

}  // namespace nlgame::bounds

#endif  // NLGAME_BOUNDS_HPP
