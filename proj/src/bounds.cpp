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

#include <bit>
#include <cmath>
#include <map>
#include <sstream>

#include "nlgame/errors.hpp"
#include "nlgame/strategies.hpp"

namespace nlgame::bounds {

using strategies::Atom;
using strategies::kAllAtoms;

// ---------------------------------------------------------------------------
// Tables and families

ResponseTable::ResponseTable(std::vector<BitString> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw SizeError("response table needs at least one row");
    length_ = rows_.front().size();
    if (length_ == 0) throw SizeError("response table rows must be non-empty");
    for (const auto& r : rows_) {
        if (r.size() != length_) throw ArgumentError("response table rows differ in length");
    }
}

GF2Family::GF2Family(int dimension, std::vector<std::uint64_t> vectors)
    : dimension_(dimension), vectors_(std::move(vectors)) {
    if (dimension < 1 || dimension > 64) {
        throw SizeError("GF(2) dimension must be in [1, 64], got " + std::to_string(dimension));
    }
    if (vectors_.empty()) throw SizeError("GF(2) family needs at least one vector");
    if (dimension < 64) {
        for (auto v : vectors_) {
            if (v >> dimension) throw ArgumentError("vector exceeds the family dimension");
        }
    }
}

GF2Family GF2Family::from_table(const ResponseTable& table) {
    if (table.length() > 64) throw SizeError("response table longer than 64 columns");
    std::vector<std::uint64_t> vectors;
    for (const auto& row : table.rows()) vectors.push_back(row.to_uint());
    return GF2Family(static_cast<int>(table.length()), std::move(vectors));
}

GF2Family GF2Family::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<BitString> rows;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        rows.emplace_back(line.substr(first, last - first + 1));
    }
    if (rows.empty()) throw ArgumentError("GF(2) family file has no vectors");
    return from_table(ResponseTable(std::move(rows)));
}

std::string GF2Family::to_text() const {
    std::string out;
    for (auto v : vectors_) {
        out += BitString::from_uint(v, static_cast<std::size_t>(dimension_)).to_string();
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Atom assignments

Rational profile_loss(const AtomProfile& profile) {
    std::int64_t n = 0;
    for (int c : profile) n += c;
    if (n < 2) throw SizeError("profile needs at least two players");
    std::int64_t lost = 0;
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = a; b < 4; ++b) {
            if (!strategies::pair_always_loses(kAllAtoms[a], kAllAtoms[b])) continue;
            const std::int64_t na = profile[a];
            const std::int64_t nb = profile[b];
            lost += a == b ? na * (na - 1) / 2 : na * nb;
        }
    }
    return Rational(lost, n * (n - 1) / 2);
}

AssignmentSearchResult exhaustive_min_loss(int n) {
    if (n < 5 || n > 12) {
        throw SizeError("exhaustive_min_loss needs 5 <= n <= 12, got " + std::to_string(n));
    }
    AssignmentSearchResult result{Rational(2), {}};
    for (int a = 0; a <= n; ++a) {
        for (int b = 0; a + b <= n; ++b) {
            for (int c = 0; a + b + c <= n; ++c) {
                AtomProfile profile{a, b, c, n - a - b - c};
                Rational loss = profile_loss(profile);
                if (loss < result.min_loss) {
                    result.min_loss = loss;
                    result.argmin.clear();
                }
                if (loss == result.min_loss) result.argmin.push_back(profile);
            }
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Response-table searches

namespace {

bool place_simple_rows(std::vector<std::uint64_t>& rows, int n, std::uint64_t next,
                       std::uint64_t limit) {
    if (static_cast<int>(rows.size()) == n) return true;
    for (std::uint64_t v = next; v < limit; ++v) {
        if (limit - v < static_cast<std::uint64_t>(n) - rows.size()) break;
        // Instance (i, new): some broadcast history must make the outputs differ.
        bool separates_all = true;
        for (auto r : rows) {
            if ((r ^ v) == 0) {
                separates_all = false;
                break;
            }
        }
        if (!separates_all) continue;
        rows.push_back(v);
        if (place_simple_rows(rows, n, v, limit)) return true;
        rows.pop_back();
    }
    return false;
}

}  // namespace

bool simple_table_exists(int n, int l) {
    if (n < 2) throw SizeError("need at least two players");
    if (l < 1 || l > 20) throw SizeError("transcript budget must be in [1, 20]");
    std::vector<std::uint64_t> rows;
    return place_simple_rows(rows, n, 0, std::uint64_t{1} << l);
}

int min_transcripts_simple(int n) {
    if (n < 2 || n > 16) {
        throw SizeError("min_transcripts_simple needs 2 <= n <= 16, got " + std::to_string(n));
    }
    for (int l = 1;; ++l) {
        if (simple_table_exists(n, l)) return l;
    }
}

bool check_gf2_condition(const GF2Family& family) {
    const int n = family.size();
    if (n > 24) throw SizeError("check_gf2_condition supports at most 24 vectors");
    const auto& v = family.vectors();
    for (int k = 2; k <= n; k += 4) {
        // Gosper's hack over all k-subsets of n.
        std::uint64_t mask = (std::uint64_t{1} << k) - 1;
        const std::uint64_t end = std::uint64_t{1} << n;
        while (mask < end) {
            std::uint64_t sum = 0;
            for (std::uint64_t m = mask; m != 0; m &= m - 1) {
                sum ^= v[static_cast<std::size_t>(std::countr_zero(m))];
            }
            if (sum == 0) return false;
            const std::uint64_t low = mask & (0 - mask);
            const std::uint64_t ripple = mask + low;
            mask = (((ripple ^ mask) >> 2) / low) | ripple;
        }
    }
    return true;
}

namespace {

/// reach[c][x]: some subset of the placed vectors with size = c (mod 4) sums
/// to x.
using Reach = std::array<std::vector<std::uint8_t>, 4>;

bool place_gf2_rows(std::vector<std::uint64_t>& rows, const Reach& reach, int n, std::uint64_t next,
                    std::uint64_t limit) {
    if (static_cast<int>(rows.size()) == n) return true;
    for (std::uint64_t v = next; v < limit; ++v) {
        if (limit - v < static_cast<std::uint64_t>(n) - rows.size()) break;
        // S plus v with |S| = 1 (mod 4) would be a zero-sum set of size 2 (mod 4).
        if (reach[1][v]) continue;
        Reach grown = reach;
        for (int c = 0; c < 4; ++c) {
            const auto& from = reach[static_cast<std::size_t>((c + 3) % 4)];
            auto& to = grown[static_cast<std::size_t>(c)];
            for (std::uint64_t x = 0; x < limit; ++x) {
                if (from[x]) to[x ^ v] = 1;
            }
        }
        rows.push_back(v);
        if (place_gf2_rows(rows, grown, n, v + 1, limit)) return true;
        rows.pop_back();
    }
    return false;
}

}  // namespace

std::optional<GF2Family> find_gf2_family(int n, int l) {
    if (n < 1) throw SizeError("family needs at least one vector");
    if (l < 1 || l > 16) throw SizeError("search dimension must be in [1, 16]");
    const std::uint64_t limit = std::uint64_t{1} << l;
    Reach reach;
    for (auto& r : reach) r.assign(limit, 0);
    reach[0][0] = 1;
    std::vector<std::uint64_t> rows;
    if (!place_gf2_rows(rows, reach, n, 0, limit)) return std::nullopt;
    return GF2Family(l, std::move(rows));
}

int min_dimension_general(int n) {
    if (n < 2 || n > 10) {
        throw SizeError("min_dimension_general needs 2 <= n <= 10, got " + std::to_string(n));
    }
    for (int l = 1; l <= 16; ++l) {
        if (find_gf2_family(n, l)) return l;
    }
    throw SizeError("no family found up to dimension 16");
}

double appendix_bound(int n) {
    if (n < 1) throw SizeError("appendix_bound needs n >= 1");
    return std::sqrt(static_cast<double>(n)) - 2.0;
}

ResponseTable response_table_from_runs(const games::GameSpec& spec, const games::Strategy& strategy) {
    const int n = spec.num_players();
    std::map<BitString, std::size_t> column_of;
    // cells[player][column] = -1 (unobserved), 0 or 1
    std::vector<std::vector<int>> cells(static_cast<std::size_t>(n) + 1);

    for (std::size_t i = 0; i < spec.support_size(); ++i) {
        games::GameInstance instance = spec.instance(i);
        BranchEnumerator branches;
        games::RunResult run = games::run_game(instance, strategy, branches);
        if (branches.advance()) {
            throw ArgumentError("response tables need a deterministic strategy; '" +
                                strategy.name() + "' is randomized");
        }
        BitString history = run.transcript.broadcast_history();
        auto [it, inserted] = column_of.emplace(history, column_of.size());
        const std::size_t column = it->second;
        for (auto& row : cells) row.resize(column_of.size(), -1);

        for (int c : instance.chosen) {
            const BitString& out =
                run.transcript.final_outputs[static_cast<std::size_t>(instance.grouping.group_of(c))];
            const int bit = out.size() == 1 ? out[0] : 0;
            int& cell = cells[static_cast<std::size_t>(c)][column];
            if (cell != -1 && cell != bit) {
                throw ArgumentError("player " + std::to_string(c) +
                                    " answered one broadcast history two ways");
            }
            cell = bit;
        }
    }

    std::vector<BitString> rows;
    for (int p = 1; p <= n; ++p) {
        BitString row;
        for (int cell : cells[static_cast<std::size_t>(p)]) row.push_back(cell == 1 ? 1 : 0);
        rows.push_back(std::move(row));
    }
    return ResponseTable(std::move(rows));
}

LemmaChainReport verify_lemma_chain(int n) {
    if (n < 2 || n > 10) {
        throw SizeError("verify_lemma_chain needs 2 <= n <= 10, got " + std::to_string(n));
    }
    LemmaChainReport r;
    r.n = n;
    r.l_min = min_dimension_general(n);
    r.bound = appendix_bound(n);
    // l >= sqrt(n) - 2  <=>  (l + 2)^2 >= n, compared in integers.
    r.bound_holds = (r.l_min + 2) * (r.l_min + 2) >= n;
    r.log2_l_min = std::log2(static_cast<double>(r.l_min));
    r.broadcast_bound = 0.5 * std::log2(static_cast<double>(n)) - 2.0;
    // log2 l >= log2(n)/2 - 2  <=>  16 l^2 >= n.
    r.broadcast_bound_holds = 16 * r.l_min * r.l_min >= n;

    games::GameSpec spec = games::make_general_game(n);
    auto label = strategies::classical_label_strategy(n);
    ResponseTable table = response_table_from_runs(spec, *label);
    r.label_transcripts = table.length();
    r.label_upper_bound = std::size_t{1} << ceil_log2(static_cast<std::uint64_t>(n));
    r.label_table_satisfies_condition = check_gf2_condition(GF2Family::from_table(table));
    r.upper_bound_holds = static_cast<std::size_t>(r.l_min) <= r.label_transcripts &&
                          r.label_transcripts <= r.label_upper_bound;
    return r;
}

}  // namespace nlgame::bounds
