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

#include "nlgame/games.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "nlgame/errors.hpp"
#include "nlgame/parallel.hpp"

namespace nlgame::games {

// ---------------------------------------------------------------------------
// Grouping, answers, instances

Grouping::Grouping(int n, std::vector<std::vector<int>> groups)
    : n_(n), groups_(std::move(groups)), group_of_(static_cast<std::size_t>(n) + 1, -1) {
    if (n < 1) {
        throw SizeError("a grouping needs at least one player");
    }
    if (groups_.empty()) {
        throw ArgumentError("a grouping needs at least one group");
    }
    int covered = 0;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
        for (int p : groups_[g]) {
            if (p < 1 || p > n) {
                throw ArgumentError("player " + std::to_string(p) + " outside [1, " +
                                    std::to_string(n) + "]");
            }
            if (group_of_[static_cast<std::size_t>(p)] != -1) {
                throw ArgumentError("player " + std::to_string(p) + " belongs to two groups");
            }
            group_of_[static_cast<std::size_t>(p)] = static_cast<int>(g);
            ++covered;
        }
    }
    if (covered != n) {
        throw ArgumentError("groups do not cover all players");
    }
}

AllowedAnswers::AllowedAnswers(int k) : k_(k) {
    if (k < 1) {
        throw ArgumentError("answer set needs at least one chosen group");
    }
}

bool AllowedAnswers::contains(std::span<const BitString> outputs) const {
    if (outputs.size() != static_cast<std::size_t>(k_) + 1) {
        return false;
    }
    int parity = 0;
    for (int i = 0; i < k_; ++i) {
        if (outputs[static_cast<std::size_t>(i)].size() != 1) {
            return false;
        }
        parity ^= outputs[static_cast<std::size_t>(i)][0];
    }
    return parity == 1 && outputs.back().empty();
}

std::vector<std::vector<BitString>> AllowedAnswers::enumerate() const {
    if (k_ > 24) {
        throw SizeError("answer set too large to enumerate");
    }
    std::vector<std::vector<BitString>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k_); ++mask) {
        if (std::popcount(mask) % 2 == 0) continue;
        std::vector<BitString> tuple;
        for (int i = 0; i < k_; ++i) {
            tuple.push_back(BitString::single(static_cast<int>((mask >> (k_ - 1 - i)) & 1U)));
        }
        tuple.emplace_back();
        out.push_back(std::move(tuple));
    }
    return out;
}

std::string to_string(GameKind kind) {
    return kind == GameKind::SimpleGame ? "SimpleGame" : "GeneralGame";
}

GameInstance make_instance(GameKind kind, int n, std::vector<int> chosen) {
    std::sort(chosen.begin(), chosen.end());
    std::vector<std::vector<int>> groups;
    std::vector<char> is_chosen(static_cast<std::size_t>(n) + 1, 0);
    for (int c : chosen) {
        if (c < 1 || c > n) {
            throw ArgumentError("chosen player outside [1, n]");
        }
        groups.push_back({c});
        is_chosen[static_cast<std::size_t>(c)] = 1;
    }
    std::vector<int> rest;
    for (int p = 1; p <= n; ++p) {
        if (!is_chosen[static_cast<std::size_t>(p)]) rest.push_back(p);
    }
    groups.push_back(std::move(rest));

    std::vector<BitString> query(chosen.size(), BitString("0"));
    query.emplace_back("1");
    AllowedAnswers allowed(static_cast<int>(chosen.size()));
    return GameInstance{kind, Grouping(n, std::move(groups)), std::move(query), allowed,
                        std::move(chosen)};
}

GameSpec::GameSpec(GameKind kind, int n, std::vector<std::vector<int>> support,
                   bool below_standard_minimum)
    : kind_(kind), n_(n), support_(std::move(support)), below_minimum_(below_standard_minimum) {
    if (support_.empty()) {
        throw SizeError("game has an empty support");
    }
}

GameInstance GameSpec::instance(std::size_t index) const {
    return make_instance(kind_, n_, support_.at(index));
}

std::size_t GameSpec::sample_index(Rng& rng) const { return rng.below(support_.size()); }

GameInstance GameSpec::sample(Rng& rng) const { return instance(sample_index(rng)); }

std::vector<GameInstance> GameSpec::enumerate() const {
    std::vector<GameInstance> out;
    out.reserve(support_.size());
    for (std::size_t i = 0; i < support_.size(); ++i) {
        out.push_back(instance(i));
    }
    return out;
}

GameSpec make_simple_game(int n) {
    if (n < 3) {
        throw SizeError("simple game needs n >= 3 (n >= 5 for the game proper), got " +
                        std::to_string(n));
    }
    if (n > 64) {
        throw SizeError("simple game supports at most 64 players");
    }
    std::vector<std::vector<int>> support;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            support.push_back({i, j});
        }
    }
    return GameSpec(GameKind::SimpleGame, n, std::move(support), n < 5);
}

GameSpec make_general_game(int n) {
    if (n < 2) {
        throw SizeError("general game needs n >= 2, got " + std::to_string(n));
    }
    if (n > 24) {
        throw SizeError("general game support is enumerated; n must be <= 24");
    }
    std::vector<std::vector<int>> support;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (std::popcount(mask) % 4 != 2) continue;
        std::vector<int> chosen;
        for (int p = 1; p <= n; ++p) {
            if ((mask >> (p - 1)) & 1U) chosen.push_back(p);
        }
        support.push_back(std::move(chosen));
    }
    return GameSpec(GameKind::GeneralGame, n, std::move(support), false);
}

// ---------------------------------------------------------------------------
// Broadcast encoding

BitString encode_broadcast(const BitString& payload, BroadcastFormat format) {
    if (!format.self_delimiting) {
        if (payload.size() != format.length) {
            throw ProtocolViolation("broadcast of " + std::to_string(payload.size()) +
                                    " bits in a step declared as exactly " +
                                    std::to_string(format.length) + " bits");
        }
        return payload;
    }
    BitString wire;
    for (std::size_t i = 0; i < payload.size(); ++i) {
        wire.push_back(1);
        wire.push_back(payload[i]);
    }
    wire.push_back(0);
    return wire;
}

std::pair<BitString, std::size_t> decode_broadcast(const BitString& wire, BroadcastFormat format) {
    if (!format.self_delimiting) {
        if (wire.size() < format.length) {
            throw ArgumentError("wire shorter than the declared fixed length");
        }
        BitString payload;
        for (std::size_t i = 0; i < format.length; ++i) payload.push_back(wire[i]);
        return {payload, format.length};
    }
    BitString payload;
    std::size_t pos = 0;
    for (;;) {
        if (pos >= wire.size()) {
            throw ArgumentError("self-delimiting message is missing its terminator");
        }
        if (wire[pos] == 0) {
            return {payload, pos + 1};
        }
        if (pos + 1 >= wire.size()) {
            throw ArgumentError("self-delimiting message truncated");
        }
        payload.push_back(wire[pos + 1]);
        pos += 2;
    }
}

BroadcastFormat Strategy::broadcast_format(int /*step*/) const { return BroadcastFormat::fixed(0); }

BitString Strategy::empty_group_broadcast(int step) const {
    BroadcastFormat f = broadcast_format(step);
    return f.self_delimiting ? BitString() : BitString::from_uint(0, f.length);
}

// ---------------------------------------------------------------------------
// Transcripts

std::size_t Transcript::broadcast_bits() const {
    std::size_t total = 0;
    for (const auto& s : steps) total += s.wire.size();
    return total;
}

BitString Transcript::broadcast_history() const {
    BitString h;
    for (const auto& s : steps) h.append(s.wire);
    return h;
}

std::vector<Message> Transcript::messages() const {
    std::vector<Message> out;
    for (const auto& s : steps) {
        for (const auto& [p, bits] : s.group_parts) {
            out.push_back({s.step, p, Scope::Group, bits});
        }
        for (const auto& [p, bits] : s.broadcast_parts) {
            out.push_back({s.step, p, Scope::Broadcast, bits});
        }
    }
    return out;
}

std::string Transcript::serialize() const {
    std::ostringstream out;
    for (const auto& m : messages()) {
        out << "step " << m.step << " | player " << m.player << " | scope "
            << (m.scope == Scope::Group ? "group" : "broadcast") << " | bits " << m.bits.to_string()
            << '\n';
    }
    return out.str();
}

std::vector<Message> parse_transcript(std::string_view text) {
    std::vector<Message> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kw_step, bar1, kw_player, bar2, kw_scope, scope, bar3, kw_bits, bits;
        int step = 0;
        int player = 0;
        ls >> kw_step >> step >> bar1 >> kw_player >> player >> bar2 >> kw_scope >> scope >> bar3 >>
            kw_bits;
        if (!ls || kw_step != "step" || bar1 != "|" || kw_player != "player" || bar2 != "|" ||
            kw_scope != "scope" || bar3 != "|" || kw_bits != "bits" ||
            (scope != "group" && scope != "broadcast")) {
            throw ArgumentError("malformed transcript line: '" + line + "'");
        }
        ls >> bits;
        out.push_back({step, player, scope == "group" ? Scope::Group : Scope::Broadcast,
                       BitString(bits)});
    }
    return out;
}

nlohmann::ordered_json to_json(const RunResult& result) {
    nlohmann::ordered_json j;
    j["won"] = result.won;
    j["broadcast_bits"] = result.broadcast_bits;
    auto outputs = nlohmann::ordered_json::array();
    for (const auto& a : result.transcript.final_outputs) outputs.push_back(a.to_string());
    j["final_outputs"] = outputs;
    auto steps = nlohmann::ordered_json::array();
    for (const auto& s : result.transcript.steps) {
        nlohmann::ordered_json js;
        js["step"] = s.step;
        js["format"] = s.format.self_delimiting ? std::string("delimited")
                                                : "fixed:" + std::to_string(s.format.length);
        auto parts = nlohmann::ordered_json::array();
        for (const auto& [p, bits] : s.broadcast_parts) {
            parts.push_back({{"player", p}, {"bits", bits.to_string()}});
        }
        js["broadcast"] = parts;
        auto group = nlohmann::ordered_json::array();
        for (const auto& [p, bits] : s.group_parts) {
            group.push_back({{"player", p}, {"bits", bits.to_string()}});
        }
        js["group"] = group;
        js["wire"] = s.wire.to_string();
        steps.push_back(js);
    }
    j["steps"] = steps;
    return j;
}

// ---------------------------------------------------------------------------
// Execution loop

RunResult run_game(const GameInstance& instance, const Strategy& strategy,
                   OutcomeSource& randomness, int step_limit) {
    const Grouping& grouping = instance.grouping;
    const int n = grouping.num_players();
    const int m = grouping.num_groups();
    if (strategy.num_players() != n) {
        throw ArgumentError("strategy '" + strategy.name() + "' is for " +
                            std::to_string(strategy.num_players()) + " players, instance has " +
                            std::to_string(n));
    }
    if (!strategy.supports(instance.kind)) {
        throw ArgumentError("strategy '" + strategy.name() + "' does not play " +
                            to_string(instance.kind));
    }
    bool has_empty_group = false;
    for (const auto& g : grouping.groups()) has_empty_group |= g.empty();

    auto players = strategy.start(randomness);
    if (players.size() != static_cast<std::size_t>(n)) {
        throw ArgumentError("strategy produced the wrong number of players");
    }

    RunResult result;
    Transcript& transcript = result.transcript;
    transcript.final_outputs.assign(static_cast<std::size_t>(m), BitString());
    std::vector<int> output_owner(static_cast<std::size_t>(m), 0);
    std::vector<char> halted(static_cast<std::size_t>(n) + 1, 0);
    int running = n;

    BitString last_broadcast;
    std::vector<std::pair<int, BitString>> last_group;

    for (int step = 1; running > 0; ++step) {
        if (step > step_limit) {
            throw NonTerminationError("strategy '" + strategy.name() + "' did not halt within " +
                                      std::to_string(step_limit) + " steps");
        }
        TranscriptStep ts;
        ts.step = step;
        ts.format = strategy.broadcast_format(step);

        for (int p = 1; p <= n; ++p) {
            if (halted[static_cast<std::size_t>(p)]) continue;
            const int g = grouping.group_of(p);
            PlayerInput in;
            in.step = step;
            in.player = p;
            if (step == 1) {
                in.query = instance.query[static_cast<std::size_t>(g)];
                if (g == instance.remaining_group()) in.auxiliary = instance.chosen;
            }
            in.broadcast = last_broadcast;
            for (const auto& [sender, bits] : last_group) {
                if (sender != p && grouping.group_of(sender) == g) {
                    in.group_messages.emplace_back(sender, bits);
                }
            }

            PlayerAction action = players[static_cast<std::size_t>(p - 1)]->act(in);

            if (!action.broadcast.empty()) ts.broadcast_parts.emplace_back(p, action.broadcast);
            if (!action.group_message.empty()) ts.group_parts.emplace_back(p, action.group_message);
            if (action.final_output) {
                auto gi = static_cast<std::size_t>(g);
                if (output_owner[gi] != 0) {
                    throw ProtocolViolation("players " + std::to_string(output_owner[gi]) +
                                            " and " + std::to_string(p) +
                                            " both produced a final output for group " +
                                            std::to_string(g + 1));
                }
                output_owner[gi] = p;
                transcript.final_outputs[gi] = *action.final_output;
            }
            if (action.halt) {
                halted[static_cast<std::size_t>(p)] = 1;
                --running;
            }
        }

        if (has_empty_group && (ts.format.self_delimiting || ts.format.length > 0)) {
            BitString proxy = strategy.empty_group_broadcast(step);
            if (!proxy.empty()) ts.broadcast_parts.emplace_back(kEmptyGroupSender, proxy);
        }
        for (const auto& [p, bits] : ts.broadcast_parts) ts.concatenated.append(bits);

        // A step with no declared broadcast and nothing sent has no message at all.
        const bool silent = !ts.format.self_delimiting && ts.format.length == 0;
        if (!(silent && ts.concatenated.empty())) {
            ts.wire = encode_broadcast(ts.concatenated, ts.format);
            auto [decoded, used] = decode_broadcast(ts.wire, ts.format);
            if (decoded != ts.concatenated || used != ts.wire.size()) {
                throw ProtocolViolation("broadcast framing is not prefix-decodable");
            }
        }
        last_broadcast = ts.concatenated;
        last_group = ts.group_parts;
        transcript.steps.push_back(std::move(ts));
    }

    result.broadcast_bits = transcript.broadcast_bits();
    result.won = instance.allowed.contains(transcript.final_outputs);
    return result;
}

// ---------------------------------------------------------------------------
// Broadcast complexity

namespace {

struct InstanceSummary {
    std::size_t max_bits = 0;
    bool all_won = true;
    std::size_t runs = 0;
    std::size_t wins = 0;
    Rational win_probability = 0;
    std::map<std::size_t, std::size_t> histogram;
};

InstanceSummary exhaust_instance(const GameInstance& instance, const Strategy& strategy) {
    InstanceSummary s;
    BranchEnumerator branches;
    do {
        RunResult r = run_game(instance, strategy, branches);
        s.max_bits = std::max(s.max_bits, r.broadcast_bits);
        s.all_won = s.all_won && r.won;
        ++s.runs;
        ++s.histogram[r.broadcast_bits];
        if (r.won) {
            ++s.wins;
            s.win_probability += branches.branch_probability();
        }
    } while (branches.advance());
    return s;
}

}  // namespace

ComplexityResult broadcast_complexity(const GameSpec& spec, const Strategy& strategy,
                                      ComplexityMode mode, int workers) {
    ComplexityResult out;
    if (mode.exhaustive) {
        auto summaries = parallel_map(spec.support_size(), workers, [&](std::size_t i) {
            return exhaust_instance(spec.instance(i), strategy);
        });
        for (const auto& s : summaries) {
            out.max_bits = std::max(out.max_bits, s.max_bits);
            out.min_won = out.min_won && s.all_won;
            out.runs += s.runs;
            out.wins += s.wins;
            out.win_rate += s.win_probability;
            for (const auto& [bits, count] : s.histogram) out.bits_histogram[bits] += count;
        }
        out.win_rate /= static_cast<std::int64_t>(spec.support_size());
        return out;
    }

    if (mode.trials == 0) {
        throw ArgumentError("sampled broadcast complexity needs at least one trial");
    }
    struct Trial {
        std::size_t bits = 0;
        bool won = false;
    };
    auto trials = parallel_map(mode.trials, workers, [&](std::size_t t) {
        Rng rng(mode.seed, t);
        GameInstance instance = spec.sample(rng);
        SampledOutcomes outcomes(rng);
        RunResult r = run_game(instance, strategy, outcomes);
        return Trial{r.broadcast_bits, r.won};
    });
    for (const auto& t : trials) {
        out.max_bits = std::max(out.max_bits, t.bits);
        out.min_won = out.min_won && t.won;
        ++out.runs;
        ++out.bits_histogram[t.bits];
        if (t.won) ++out.wins;
    }
    out.win_rate = Rational(static_cast<std::int64_t>(out.wins), static_cast<std::int64_t>(out.runs));
    return out;
}

}  // namespace nlgame::games
