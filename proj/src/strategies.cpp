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

#include <algorithm>
#include <functional>

#include "nlgame/errors.hpp"

namespace nlgame::strategies {

using games::BroadcastFormat;
using games::GameKind;
using games::Player;
using games::PlayerAction;
using games::PlayerInput;

namespace {

/// Players 1..n not listed in `chosen`, ascending.
std::vector<int> complement(int n, const std::vector<int>& chosen) {
    std::vector<char> in(static_cast<std::size_t>(n) + 1, 0);
    for (int c : chosen) in.at(static_cast<std::size_t>(c)) = 1;
    std::vector<int> out;
    for (int p = 1; p <= n; ++p) {
        if (!in[static_cast<std::size_t>(p)]) out.push_back(p);
    }
    return out;
}

bool is_remaining(const PlayerInput& in) { return in.query && *in.query == BitString("1"); }

int single_bit(const BitString& bits, const char* what) {
    if (bits.size() != 1) {
        throw ProtocolViolation(std::string("expected a 1-bit ") + what + ", got '" +
                                bits.to_string() + "'");
    }
    return bits[0];
}

}  // namespace

// ---------------------------------------------------------------------------
// Atoms

int apply_atom(Atom atom, int hint) {
    switch (atom) {
        case Atom::Const0:
            return 0;
        case Atom::Const1:
            return 1;
        case Atom::CopyHint:
            return hint;
        case Atom::FlipHint:
            return 1 - hint;
    }
    throw ArgumentError("unknown atom");
}

std::string to_string(Atom atom) {
    switch (atom) {
        case Atom::Const0:
            return "const0";
        case Atom::Const1:
            return "const1";
        case Atom::CopyHint:
            return "copy";
        case Atom::FlipHint:
            return "flip";
    }
    return "?";
}

Atom parse_atom(std::string_view tag) {
    if (tag == "0" || tag == "const0") return Atom::Const0;
    if (tag == "1" || tag == "const1") return Atom::Const1;
    if (tag == "c" || tag == "copy") return Atom::CopyHint;
    if (tag == "f" || tag == "flip") return Atom::FlipHint;
    throw ArgumentError("unknown atom tag '" + std::string(tag) + "'");
}

int best_response_hint(Atom first, Atom second) {
    for (int hint : {0, 1}) {
        if (apply_atom(first, hint) != apply_atom(second, hint)) return hint;
    }
    return 0;
}

bool pair_always_loses(Atom first, Atom second) {
    int hint = best_response_hint(first, second);
    return apply_atom(first, hint) == apply_atom(second, hint);
}

StrategyAssignment::StrategyAssignment(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    const std::size_t n = atoms_.size();
    hints_.assign(n + 1, std::vector<int>(n + 1, 0));
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = i + 1; j <= n; ++j) {
            hints_[i][j] = best_response_hint(atoms_[i - 1], atoms_[j - 1]);
        }
    }
}

StrategyAssignment::StrategyAssignment(std::vector<Atom> atoms, std::vector<std::vector<int>> hints)
    : atoms_(std::move(atoms)), hints_(std::move(hints)) {
    const std::size_t n = atoms_.size();
    if (hints_.size() != n + 1) {
        throw ArgumentError("hint table must have n + 1 rows");
    }
    for (std::size_t i = 1; i <= n; ++i) {
        if (hints_[i].size() != n + 1) {
            throw ArgumentError("hint table must have n + 1 columns");
        }
        for (std::size_t j = i + 1; j <= n; ++j) {
            if (hints_[i][j] != 0 && hints_[i][j] != 1) {
                throw ArgumentError("hint bits must be 0 or 1");
            }
        }
    }
}

int StrategyAssignment::hint(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i < 1 || j > num_players() || i == j) {
        throw ArgumentError("no hint for pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
    return hints_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

Rational StrategyAssignment::losing_probability() const {
    const int n = num_players();
    std::int64_t lost = 0;
    std::int64_t pairs = 0;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            int h = hint(i, j);
            if (apply_atom(atom(i), h) == apply_atom(atom(j), h)) ++lost;
            ++pairs;
        }
    }
    if (pairs == 0) throw SizeError("losing probability needs at least two players");
    return Rational(lost, pairs);
}

StrategyAssignment balanced_assignment(int n) {
    if (n < 2) throw SizeError("assignment needs at least two players");
    std::vector<Atom> atoms;
    for (int p = 0; p < n; ++p) atoms.push_back(kAllAtoms[static_cast<std::size_t>(p % 4)]);
    return StrategyAssignment(std::move(atoms));
}

StrategyAssignment parse_assignment(std::string_view text) {
    constexpr std::string_view kBalanced = "balanced:";
    if (text.substr(0, kBalanced.size()) == kBalanced) {
        std::string count(text.substr(kBalanced.size()));
        try {
            return balanced_assignment(std::stoi(count));
        } catch (const std::invalid_argument&) {
            throw ArgumentError("bad player count in '" + std::string(text) + "'");
        }
    }
    std::vector<Atom> atoms;
    if (text.find(',') == std::string_view::npos) {
        for (char c : text) atoms.push_back(parse_atom(std::string_view(&c, 1)));
    } else {
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t comma = text.find(',', start);
            if (comma == std::string_view::npos) comma = text.size();
            atoms.push_back(parse_atom(text.substr(start, comma - start)));
            start = comma + 1;
        }
    }
    if (atoms.size() < 2) throw ArgumentError("assignment needs at least two atoms");
    return StrategyAssignment(std::move(atoms));
}

// ---------------------------------------------------------------------------
// Classical atom strategies

namespace {

class AtomPlayer final : public Player {
   public:
    AtomPlayer(int self, std::shared_ptr<const StrategyAssignment> assignment)
        : self_(self), assignment_(std::move(assignment)) {}

    PlayerAction act(const PlayerInput& in) override {
        if (in.step == 1) {
            if (!is_remaining(in)) return PlayerAction::idle();
            if (in.auxiliary.size() != 2) {
                throw ProtocolViolation("atom strategy expects a chosen pair");
            }
            auto rest = complement(assignment_->num_players(), in.auxiliary);
            PlayerAction a = PlayerAction::halt_silently();
            if (!rest.empty() && rest.front() == self_) {
                a.broadcast = BitString::single(assignment_->hint(in.auxiliary[0], in.auxiliary[1]));
            }
            return a;
        }
        int hint = single_bit(in.broadcast, "hint");
        PlayerAction a = PlayerAction::halt_silently();
        a.final_output = BitString::single(apply_atom(assignment_->atom(self_), hint));
        return a;
    }

   private:
    int self_;
    std::shared_ptr<const StrategyAssignment> assignment_;
};

std::vector<std::unique_ptr<Player>> atom_players(std::shared_ptr<const StrategyAssignment> a) {
    std::vector<std::unique_ptr<Player>> players;
    for (int p = 1; p <= a->num_players(); ++p) {
        players.push_back(std::make_unique<AtomPlayer>(p, a));
    }
    return players;
}

std::string assignment_tags(const StrategyAssignment& a) {
    std::string s;
    for (Atom atom : a.atoms()) {
        if (!s.empty()) s += ',';
        s += to_string(atom);
    }
    return s;
}

class AtomStrategy final : public games::Strategy {
   public:
    explicit AtomStrategy(StrategyAssignment a)
        : assignment_(std::make_shared<const StrategyAssignment>(std::move(a))) {}

    std::string name() const override { return "classical-atoms:" + assignment_tags(*assignment_); }
    int num_players() const override { return assignment_->num_players(); }
    bool supports(GameKind kind) const override { return kind == GameKind::SimpleGame; }
    BroadcastFormat broadcast_format(int step) const override {
        return BroadcastFormat::fixed(step == 1 ? 1 : 0);
    }
    std::vector<std::unique_ptr<Player>> start(OutcomeSource&) const override {
        return atom_players(assignment_);
    }

   private:
    std::shared_ptr<const StrategyAssignment> assignment_;
};

class MixedAtomStrategy final : public games::Strategy {
   public:
    explicit MixedAtomStrategy(std::vector<std::pair<Rational, StrategyAssignment>> dist) {
        if (dist.empty()) throw ArgumentError("empty strategy distribution");
        for (auto& [w, a] : dist) {
            weights_.push_back(w);
            assignments_.push_back(std::make_shared<const StrategyAssignment>(std::move(a)));
            if (assignments_.back()->num_players() != assignments_.front()->num_players()) {
                throw ArgumentError("mixed assignments disagree on the player count");
            }
        }
    }

    std::string name() const override { return "classical-mixed"; }
    int num_players() const override { return assignments_.front()->num_players(); }
    bool supports(GameKind kind) const override { return kind == GameKind::SimpleGame; }
    BroadcastFormat broadcast_format(int step) const override {
        return BroadcastFormat::fixed(step == 1 ? 1 : 0);
    }
    std::vector<std::unique_ptr<Player>> start(OutcomeSource& randomness) const override {
        return atom_players(assignments_[randomness.choose(weights_)]);
    }

   private:
    std::vector<Rational> weights_;
    std::vector<std::shared_ptr<const StrategyAssignment>> assignments_;
};

}  // namespace

std::unique_ptr<games::Strategy> classical_atom_strategy_assignment(StrategyAssignment assignment) {
    return std::make_unique<AtomStrategy>(std::move(assignment));
}

std::unique_ptr<games::Strategy> mixed_atom_strategy(
    std::vector<std::pair<Rational, StrategyAssignment>> distribution) {
    return std::make_unique<MixedAtomStrategy>(std::move(distribution));
}

Rational losing_probability_formula(int n) {
    if (n < 5) {
        throw DomainError("p(n) is defined for n >= 5, got " + std::to_string(n));
    }
    const std::int64_t k = n / 4;
    const std::int64_t r = n % 4;
    const std::int64_t nn = n;
    return Rational((4 - r) * k * (k - 1), nn * (nn - 1)) +
           Rational(r * (k + 1) * k, nn * (nn - 1));
}

// ---------------------------------------------------------------------------
// GHZ strategies

namespace {

/// The players' jointly held GHZ state. Each player touches only its own qubit.
class SharedGhz {
   public:
    SharedGhz(int n, OutcomeSource& source)
        : state_(qsim::make_ghz(n)), source_(&source), measured_(static_cast<std::size_t>(n) + 1, 0) {}

    int measure(int qubit, qsim::MeasBasis basis) {
        auto& done = measured_.at(static_cast<std::size_t>(qubit));
        if (done) {
            throw ProtocolViolation("qubit " + std::to_string(qubit) + " measured twice");
        }
        done = 1;
        qsim::MeasurementResult r = qsim::measure_qubit(state_, qubit, basis, *source_);
        state_ = std::move(r.collapsed);
        return r.outcome;
    }

   private:
    qsim::StateVector state_;
    OutcomeSource* source_;
    std::vector<char> measured_;
};

class GhzPlayer final : public Player {
   public:
    GhzPlayer(int self, int n, std::shared_ptr<SharedGhz> shared)
        : self_(self), n_(n), shared_(std::move(shared)) {}

    PlayerAction act(const PlayerInput& in) override {
        if (in.step == 1) {
            remaining_ = is_remaining(in);
            if (!remaining_) return PlayerAction::idle();
            auto rest = complement(n_, in.auxiliary);
            group_size_ = rest.size();
            own_outcome_ = shared_->measure(self_, qsim::MeasBasis::Diagonal);
            if (rest.front() == self_) return PlayerAction::idle();
            PlayerAction a = PlayerAction::halt_silently();
            a.group_message = BitString::single(own_outcome_);
            return a;
        }
        if (remaining_) {
            // Reporting leader: collect the other outcomes and broadcast the parity.
            if (in.group_messages.size() + 1 != group_size_) {
                throw ProtocolViolation("leader received " + std::to_string(in.group_messages.size()) +
                                        " reports, expected " + std::to_string(group_size_ - 1));
            }
            int parity = own_outcome_;
            for (const auto& [sender, bits] : in.group_messages) parity ^= single_bit(bits, "report");
            PlayerAction a = PlayerAction::halt_silently();
            a.broadcast = BitString::single(parity);
            return a;
        }
        if (in.step <= GhzParityStrategy::kHintStep) return PlayerAction::idle();
        int hint = single_bit(in.broadcast, "hint");
        int outcome = shared_->measure(self_, GhzParityStrategy::chosen_basis(hint));
        PlayerAction a = PlayerAction::halt_silently();
        a.final_output = BitString::single(outcome);
        return a;
    }

   private:
    int self_;
    int n_;
    std::shared_ptr<SharedGhz> shared_;
    bool remaining_ = false;
    std::size_t group_size_ = 0;
    int own_outcome_ = 0;
};

}  // namespace

Rational QuantumOutcomeTable::branch_probability(std::size_t r) const {
    Rational total = 0;
    for (const auto& p : probability.at(r)) total += p;
    return total;
}

Rational QuantumOutcomeTable::chosen_output_probability(std::size_t c) const {
    Rational total = 0;
    for (const auto& row : probability) total += row.at(c);
    return total;
}

GhzParityStrategy::GhzParityStrategy(int n, bool general, int fallback_hint)
    : n_(n), general_(general), fallback_hint_(fallback_hint) {
    const int min_n = general ? 2 : 3;
    if (n < min_n || n > qsim::kDefaultQubitCap) {
        throw SizeError("GHZ strategy needs " + std::to_string(min_n) + " <= n <= " +
                        std::to_string(qsim::kDefaultQubitCap) + ", got " + std::to_string(n));
    }
    if (fallback_hint != 0 && fallback_hint != 1) {
        throw ArgumentError("fallback hint must be a bit");
    }
}

std::string GhzParityStrategy::name() const { return general_ ? "quantum-general" : "quantum-simple"; }

bool GhzParityStrategy::supports(GameKind kind) const {
    return general_ || kind == GameKind::SimpleGame;
}

BroadcastFormat GhzParityStrategy::broadcast_format(int step) const {
    return BroadcastFormat::fixed(step == kHintStep ? 1 : 0);
}

BitString GhzParityStrategy::empty_group_broadcast(int step) const {
    return step == kHintStep ? BitString::single(fallback_hint_) : BitString();
}

std::vector<std::unique_ptr<Player>> GhzParityStrategy::start(OutcomeSource& randomness) const {
    auto shared = std::make_shared<SharedGhz>(n_, randomness);
    std::vector<std::unique_ptr<Player>> players;
    for (int p = 1; p <= n_; ++p) {
        players.push_back(std::make_unique<GhzPlayer>(p, n_, shared));
    }
    return players;
}

QuantumOutcomeTable GhzParityStrategy::exact_outcomes(std::vector<int> chosen) const {
    std::sort(chosen.begin(), chosen.end());
    if (chosen.empty() || std::adjacent_find(chosen.begin(), chosen.end()) != chosen.end() ||
        chosen.front() < 1 || chosen.back() > n_) {
        throw ArgumentError("chosen players must be distinct members of 1..n");
    }
    QuantumOutcomeTable table;
    table.chosen = chosen;
    table.remaining = complement(n_, chosen);
    const std::size_t r_count = table.remaining.size();
    const std::size_t k = chosen.size();
    table.probability.assign(std::size_t{1} << r_count,
                             std::vector<Rational>(std::size_t{1} << k, Rational(0)));

    // Alive qubits (original indices, ascending); a qubit's current position is
    // one plus its rank among them.
    auto position = [](const std::vector<int>& alive, int qubit) {
        auto it = std::lower_bound(alive.begin(), alive.end(), qubit);
        return static_cast<int>(it - alive.begin()) + 1;
    };
    auto drop = [](std::vector<int> alive, int qubit) {
        alive.erase(std::lower_bound(alive.begin(), alive.end(), qubit));
        return alive;
    };

    std::function<void(const qsim::Amplitudes&, const std::vector<int>&, std::size_t, std::size_t,
                       std::size_t, qsim::MeasBasis)>
        chosen_dfs = [&](const qsim::Amplitudes& amps, const std::vector<int>& alive,
                         std::size_t depth, std::size_t r_mask, std::size_t c_mask,
                         qsim::MeasBasis basis) {
            if (depth == k) {
                table.probability[r_mask][c_mask] = amps.squared_norm();
                return;
            }
            const int q = chosen[depth];
            auto next_alive = drop(alive, q);
            for (int bit : {0, 1}) {
                auto projected = amps.project(position(alive, q), basis, bit);
                chosen_dfs(projected, next_alive, depth + 1, r_mask,
                           (c_mask << 1) | static_cast<std::size_t>(bit), basis);
            }
        };

    std::function<void(const qsim::Amplitudes&, const std::vector<int>&, std::size_t, std::size_t,
                       int)>
        remaining_dfs = [&](const qsim::Amplitudes& amps, const std::vector<int>& alive,
                            std::size_t depth, std::size_t r_mask, int parity) {
            if (depth == r_count) {
                const int hint = r_count == 0 ? fallback_hint_ : parity;
                chosen_dfs(amps, alive, 0, r_mask, 0, chosen_basis(hint));
                return;
            }
            const int q = table.remaining[depth];
            auto next_alive = drop(alive, q);
            for (int bit : {0, 1}) {
                auto projected = amps.project(position(alive, q), qsim::MeasBasis::Diagonal, bit);
                remaining_dfs(projected, next_alive, depth + 1,
                              (r_mask << 1) | static_cast<std::size_t>(bit), parity ^ bit);
            }
        };

    std::vector<int> alive;
    for (int p = 1; p <= n_; ++p) alive.push_back(p);
    remaining_dfs(qsim::make_ghz(n_).as_amplitudes(), alive, 0, 0, 0);
    return table;
}

std::unique_ptr<GhzParityStrategy> quantum_simple_strategy(int n) {
    return std::make_unique<GhzParityStrategy>(n, false);
}

std::unique_ptr<GhzParityStrategy> quantum_general_strategy(int n) {
    return std::make_unique<GhzParityStrategy>(n, true);
}

// ---------------------------------------------------------------------------
// Labeling strategy

LabelTable::LabelTable(int n) {
    if (n < 2) throw SizeError("labeling needs at least two players");
    width_ = static_cast<std::size_t>(ceil_log2(static_cast<std::uint64_t>(n)));
    for (int p = 1; p <= n; ++p) {
        labels_.push_back(BitString::from_uint(static_cast<std::uint64_t>(p - 1), width_));
    }
}

namespace {

class LabelPlayer final : public Player {
   public:
    LabelPlayer(int self, std::shared_ptr<const LabelTable> labels)
        : self_(self), labels_(std::move(labels)) {}

    PlayerAction act(const PlayerInput& in) override {
        if (in.step == 1) {
            if (!is_remaining(in)) return PlayerAction::idle();
            auto rest = complement(labels_->num_players(), in.auxiliary);
            PlayerAction a = PlayerAction::halt_silently();
            if (rest.front() == self_) {
                const int target = *std::min_element(in.auxiliary.begin(), in.auxiliary.end());
                a.broadcast = labels_->label(target);
            }
            return a;
        }
        PlayerAction a = PlayerAction::halt_silently();
        a.final_output = BitString::single(in.broadcast == labels_->label(self_) ? 1 : 0);
        return a;
    }

   private:
    int self_;
    std::shared_ptr<const LabelTable> labels_;
};

class LabelStrategy final : public games::Strategy {
   public:
    explicit LabelStrategy(int n) : labels_(std::make_shared<const LabelTable>(n)) {}

    std::string name() const override { return "classical-label"; }
    int num_players() const override { return labels_->num_players(); }
    bool supports(GameKind) const override { return true; }
    BroadcastFormat broadcast_format(int step) const override {
        return BroadcastFormat::fixed(step == 1 ? labels_->width() : 0);
    }
    BitString empty_group_broadcast(int step) const override {
        return step == 1 ? labels_->label(1) : BitString();
    }
    std::vector<std::unique_ptr<Player>> start(OutcomeSource&) const override {
        std::vector<std::unique_ptr<Player>> players;
        for (int p = 1; p <= labels_->num_players(); ++p) {
            players.push_back(std::make_unique<LabelPlayer>(p, labels_));
        }
        return players;
    }

   private:
    std::shared_ptr<const LabelTable> labels_;
};

}  // namespace

std::unique_ptr<games::Strategy> classical_label_strategy(int n) {
    return std::make_unique<LabelStrategy>(n);
}

std::unique_ptr<games::Strategy> make_strategy(std::string_view name, int n) {
    if (name == "quantum-simple") return quantum_simple_strategy(n);
    if (name == "quantum-general") return quantum_general_strategy(n);
    if (name == "classical-label") return classical_label_strategy(n);
    constexpr std::string_view kAtoms = "classical-atoms:";
    if (name.substr(0, kAtoms.size()) == kAtoms) {
        std::string_view rest = name.substr(kAtoms.size());
        StrategyAssignment a = rest == "balanced" ? balanced_assignment(n) : parse_assignment(rest);
        if (a.num_players() != n) {
            throw ArgumentError("assignment lists " + std::to_string(a.num_players()) +
                                " atoms for " + std::to_string(n) + " players");
        }
        return classical_atom_strategy_assignment(std::move(a));
    }
    throw ArgumentError("unknown strategy '" + std::string(name) + "'");
}

}  // namespace nlgame::strategies
