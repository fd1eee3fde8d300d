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

#ifndef NLGAME_STRATEGIES_HPP
#define NLGAME_STRATEGIES_HPP

#include <array>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nlgame/games.hpp"
#include "nlgame/qsim.hpp"
#include "nlgame/rational.hpp"

namespace nlgame::strategies {

// ---------------------------------------------------------------------------
// Classical one-bit behaviours

/// What a chosen player does with the hint bit b: output 0, 1, b or not-b.
enum class Atom { Const0, Const1, CopyHint, FlipHint };

inline constexpr std::array<Atom, 4> kAllAtoms = {Atom::Const0, Atom::Const1, Atom::CopyHint,
                                                  Atom::FlipHint};

int apply_atom(Atom atom, int hint);
std::string to_string(Atom atom);
/// Accepts const0|const1|copy|flip and the short forms 0|1|c|f.
Atom parse_atom(std::string_view tag);

/// Hint bit minimizing the loss for a chosen pair (ties resolve to 0).
int best_response_hint(Atom first, Atom second);
/// True when no hint bit makes the pair's outputs differ.
bool pair_always_loses(Atom first, Atom second);

/// Per-player atoms plus the remaining group's hint for every pair (i, j).
class StrategyAssignment {
   public:
    /// Uses best-response hints.
    explicit StrategyAssignment(std::vector<Atom> atoms);
    /// hints[i][j] for 1 <= i < j <= n; other entries are ignored.
    StrategyAssignment(std::vector<Atom> atoms, std::vector<std::vector<int>> hints);

    int num_players() const { return static_cast<int>(atoms_.size()); }
    Atom atom(int player) const { return atoms_.at(static_cast<std::size_t>(player - 1)); }
    const std::vector<Atom>& atoms() const { return atoms_; }
    int hint(int i, int j) const;

    /// Exact fraction of pairs lost under this assignment.
    Rational losing_probability() const;

   private:
    std::vector<Atom> atoms_;
    std::vector<std::vector<int>> hints_;
};

/// Round-robin Const0, Const1, CopyHint, FlipHint, ...: class sizes differ
/// by at most one.
StrategyAssignment balanced_assignment(int n);

/// Parses "0,1,c,f,..." (n comma-separated atom tags) or "balanced:<n>".
StrategyAssignment parse_assignment(std::string_view text);

std::unique_ptr<games::Strategy> classical_atom_strategy_assignment(StrategyAssignment assignment);

/// Shared randomness fixed before the game: one deterministic assignment is
/// drawn from the distribution at the start of each run.
std::unique_ptr<games::Strategy> mixed_atom_strategy(
    std::vector<std::pair<Rational, StrategyAssignment>> distribution);

/// p(n) for n = 4k + r: the minimal classical losing probability of the
/// simple game with one hint bit. Throws DomainError for n < 5.
Rational losing_probability_formula(int n);

// ---------------------------------------------------------------------------
// GHZ strategies

/// Exact joint distribution of the remaining players' measurement outcomes
/// and the chosen players' outputs for one instance.
struct QuantumOutcomeTable {
    std::vector<int> chosen;
    std::vector<int> remaining;
    /// probability[r][c]: r indexes remaining outcomes and c chosen outputs,
    /// both as bit masks with the lowest-numbered player most significant.
    std::vector<std::vector<Rational>> probability;

    Rational branch_probability(std::size_t r) const;
    Rational chosen_output_probability(std::size_t c) const;
};

/// The GHZ strategy for both games. Remaining players measure in the diagonal
/// basis and report to the lowest-index remaining player, who broadcasts the
/// parity b of the |f_1> outcomes in a fixed 1-bit step. Chosen players then
/// measure in the diagonal basis if b = 1, the circular basis if b = 0, and
/// output the outcome. An empty remaining group broadcasts `fallback_hint`.
class GhzParityStrategy final : public games::Strategy {
   public:
    GhzParityStrategy(int n, bool general, int fallback_hint = 0);

    std::string name() const override;
    int num_players() const override { return n_; }
    bool supports(games::GameKind kind) const override;
    games::BroadcastFormat broadcast_format(int step) const override;
    BitString empty_group_broadcast(int step) const override;
    std::vector<std::unique_ptr<games::Player>> start(OutcomeSource& randomness) const override;

    static qsim::MeasBasis chosen_basis(int hint) {
        return hint == 1 ? qsim::MeasBasis::Diagonal : qsim::MeasBasis::Circular;
    }
    int fallback_hint() const { return fallback_hint_; }

    /// Exact outcome table computed by projecting the GHZ state, with no
    /// sampling. Chosen players must be a subset of 1..n.
    QuantumOutcomeTable exact_outcomes(std::vector<int> chosen) const;

    static constexpr int kReportStep = 1;
    static constexpr int kHintStep = 2;

   private:
    int n_;
    bool general_;
    int fallback_hint_;
};

std::unique_ptr<GhzParityStrategy> quantum_simple_strategy(int n);
std::unique_ptr<GhzParityStrategy> quantum_general_strategy(int n);

// ---------------------------------------------------------------------------
// Labeling strategy

class LabelTable {
   public:
    /// Player i gets the ceil(log2 n)-bit binary form of i - 1.
    explicit LabelTable(int n);

    int num_players() const { return static_cast<int>(labels_.size()); }
    std::size_t width() const { return width_; }
    const BitString& label(int player) const { return labels_.at(static_cast<std::size_t>(player - 1)); }

   private:
    std::size_t width_;
    std::vector<BitString> labels_;
};

/// Remaining players broadcast the label of the lowest-index chosen player;
/// each chosen player outputs 1 iff the broadcast equals its own label. An
/// empty remaining group broadcasts player 1's label.
std::unique_ptr<games::Strategy> classical_label_strategy(int n);

// ---------------------------------------------------------------------------

/// Builds a strategy from its CLI name: quantum-simple, quantum-general,
/// classical-label, classical-atoms:<assignment>. Throws ArgumentError for
/// unknown names.
std::unique_ptr<games::Strategy> make_strategy(std::string_view name, int n);

}  // namespace nlgame::strategies

#endif  // NLGAME_STRATEGIES_HPP
