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

#ifndef NLGAME_GAMES_HPP
#define NLGAME_GAMES_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "nlgame/bits.hpp"
#include "nlgame/random.hpp"
#include "nlgame/rational.hpp"

// Formal game model: instances (grouping, query, allowed answers), the two
// concrete game distributions, the step-based execution loop and group
// broadcast accounting.
namespace nlgame::games {

/// Partition of players 1..n into ordered groups G_1..G_m.
///
/// A group may be empty: the general game with C = [n] leaves the remaining
/// group without members.
class Grouping {
   public:
    Grouping(int n, std::vector<std::vector<int>> groups);

    int num_players() const { return n_; }
    int num_groups() const { return static_cast<int>(groups_.size()); }
    const std::vector<int>& group(int g) const { return groups_.at(static_cast<std::size_t>(g)); }
    const std::vector<std::vector<int>>& groups() const { return groups_; }
    /// Zero-based group index of a 1-based player.
    int group_of(int player) const { return group_of_.at(static_cast<std::size_t>(player)); }

    friend bool operator==(const Grouping&, const Grouping&) = default;

   private:
    int n_;
    std::vector<std::vector<int>> groups_;
    std::vector<int> group_of_;
};

/// The set W_k: k single output bits with odd parity, followed by an empty
/// output for the remaining group. W_s of the simple game is W_2.
class AllowedAnswers {
   public:
    explicit AllowedAnswers(int k);

    int chosen_count() const { return k_; }
    bool contains(std::span<const BitString> outputs) const;
    std::vector<std::vector<BitString>> enumerate() const;

    friend bool operator==(const AllowedAnswers&, const AllowedAnswers&) = default;

   private:
    int k_;
};

enum class GameKind { SimpleGame, GeneralGame };

std::string to_string(GameKind kind);

struct GameInstance {
    GameKind kind;
    Grouping grouping;
    std::vector<BitString> query;
    AllowedAnswers allowed;
    /// Chosen players in increasing order; also the auxiliary input of the
    /// remaining (last) group.
    std::vector<int> chosen;

    int num_players() const { return grouping.num_players(); }
    int remaining_group() const { return grouping.num_groups() - 1; }
};

/// A uniform distribution over instances with an exhaustive enumerator.
class GameSpec {
   public:
    GameSpec(GameKind kind, int n, std::vector<std::vector<int>> support, bool below_standard_minimum);

    GameKind kind() const { return kind_; }
    int num_players() const { return n_; }
    std::string name() const { return to_string(kind_); }
    /// True for simple games with 3 <= n < 5 (accepted for strategy testing).
    bool below_standard_minimum() const { return below_minimum_; }

    std::size_t support_size() const { return support_.size(); }
    const std::vector<std::vector<int>>& support() const { return support_; }
    GameInstance instance(std::size_t index) const;
    GameInstance sample(Rng& rng) const;
    std::size_t sample_index(Rng& rng) const;
    std::vector<GameInstance> enumerate() const;

   private:
    GameKind kind_;
    int n_;
    std::vector<std::vector<int>> support_;
    bool below_minimum_;
};

GameSpec make_simple_game(int n);
GameSpec make_general_game(int n);
GameInstance make_instance(GameKind kind, int n, std::vector<int> chosen);

// ---------------------------------------------------------------------------
// Broadcast encoding

/// Per-step framing of the concatenated broadcast string. A fixed length
/// declared by the strategy's schedule costs no header bits; a
/// self-delimiting step costs 2 bits per payload bit plus a terminator.
struct BroadcastFormat {
    bool self_delimiting = false;
    std::size_t length = 0;

    static BroadcastFormat fixed(std::size_t length) { return {false, length}; }
    static BroadcastFormat delimited() { return {true, 0}; }
    friend bool operator==(const BroadcastFormat&, const BroadcastFormat&) = default;
};

/// Wire form of one step's broadcast. Throws ProtocolViolation when a fixed
/// length is not respected.
BitString encode_broadcast(const BitString& payload, BroadcastFormat format);

/// Reads one message from the front of `wire`, detecting its end bitwise.
/// Returns the payload and the number of wire bits consumed.
std::pair<BitString, std::size_t> decode_broadcast(const BitString& wire, BroadcastFormat format);

// ---------------------------------------------------------------------------
// Players and strategies

struct PlayerInput {
    int step = 0;
    int player = 0;
    /// Query of the player's group; present in step 1 only.
    std::optional<BitString> query;
    /// Auxiliary input of the remaining group (the chosen players); step 1 only.
    std::vector<int> auxiliary;
    /// Concatenated broadcast of the previous step (empty in step 1).
    BitString broadcast;
    /// Messages sent within the player's group in the previous step.
    std::vector<std::pair<int, BitString>> group_messages;
};

struct PlayerAction {
    BitString broadcast;
    BitString group_message;
    std::optional<BitString> final_output;
    bool halt = false;

    static PlayerAction idle() { return {}; }
    static PlayerAction halt_silently() { return {{}, {}, std::nullopt, true}; }
};

class Player {
   public:
    virtual ~Player() = default;
    virtual PlayerAction act(const PlayerInput& input) = 0;
};

/// Immutable blueprint. start() instantiates fresh per-run players (and any
/// shared quantum state) for one run.
class Strategy {
   public:
    virtual ~Strategy() = default;
    virtual std::string name() const = 0;
    virtual int num_players() const = 0;
    virtual bool supports(GameKind kind) const = 0;

    /// Declared framing of the broadcast produced in `step`. The default
    /// allows no broadcast.
    virtual BroadcastFormat broadcast_format(int step) const;

    /// Message emitted on behalf of an empty group in a broadcast step.
    /// Defaults to all-zero bits of the declared fixed length.
    virtual BitString empty_group_broadcast(int step) const;

    /// Per-run players, indexed 0..n-1 for players 1..n.
    virtual std::vector<std::unique_ptr<Player>> start(OutcomeSource& randomness) const = 0;
};

// ---------------------------------------------------------------------------
// Transcripts and runs

enum class Scope { Group, Broadcast };

/// Player index used for the message emitted on behalf of an empty group.
inline constexpr int kEmptyGroupSender = 0;

struct Message {
    int step;
    int player;
    Scope scope;
    BitString bits;
    friend bool operator==(const Message&, const Message&) = default;
};

struct TranscriptStep {
    int step;
    BroadcastFormat format;
    /// b_{t,i} for i = 1..n, then the empty-group message (if any).
    std::vector<std::pair<int, BitString>> broadcast_parts;
    std::vector<std::pair<int, BitString>> group_parts;
    BitString concatenated;
    BitString wire;
};

struct Transcript {
    std::vector<TranscriptStep> steps;
    /// a_1..a_m; empty means epsilon.
    std::vector<BitString> final_outputs;

    std::size_t broadcast_bits() const;
    /// All wire bits concatenated over steps: the history m seen by players.
    BitString broadcast_history() const;
    std::vector<Message> messages() const;
    /// Lines "step t | player i | scope {group|broadcast} | bits <0/1 string>".
    std::string serialize() const;
};

std::vector<Message> parse_transcript(std::string_view text);

struct RunResult {
    bool won = false;
    Transcript transcript;
    std::size_t broadcast_bits = 0;
};

nlohmann::ordered_json to_json(const RunResult& result);

inline constexpr int kDefaultStepLimit = 64;

/// Plays one instance. Throws ProtocolViolation when two players of a group
/// output or a fixed-length broadcast is violated, and NonTerminationError
/// after `step_limit` steps.
RunResult run_game(const GameInstance& instance, const Strategy& strategy,
                   OutcomeSource& randomness, int step_limit = kDefaultStepLimit);

struct ComplexityMode {
    bool exhaustive = true;
    std::size_t trials = 0;
    std::uint64_t seed = kDefaultSeed;

    static ComplexityMode exhaustive_mode() { return {true, 0, kDefaultSeed}; }
    static ComplexityMode sampled(std::size_t trials, std::uint64_t seed = kDefaultSeed) {
        return {false, trials, seed};
    }
};

struct ComplexityResult {
    std::size_t max_bits = 0;
    bool min_won = true;
    std::size_t runs = 0;
    std::size_t wins = 0;
    /// Exact win probability in exhaustive mode; wins/runs when sampled.
    Rational win_rate = 0;
    std::map<std::size_t, std::size_t> bits_histogram;
};

/// Worst-case group broadcast complexity B(G_n, tau) over the enumerated
/// support (every positive-probability randomness branch in exhaustive mode)
/// or over sampled instances. Sampled trial t uses Rng(seed, t), so results
/// do not depend on `workers`.
ComplexityResult broadcast_complexity(const GameSpec& spec, const Strategy& strategy,
                                      ComplexityMode mode, int workers = 1);

}  // namespace nlgame::games

#endif  // NLGAME_GAMES_HPP
