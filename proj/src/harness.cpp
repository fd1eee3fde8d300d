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

#include "nlgame/harness.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "nlgame/bounds.hpp"
#include "nlgame/errors.hpp"
#include "nlgame/parallel.hpp"
#include "nlgame/qsim.hpp"
#include "nlgame/strategies.hpp"

namespace nlgame::harness {

using json = nlohmann::ordered_json;

namespace {

/// JSON number carrying at most 12 significant digits.
json decimal(double x) { return std::stod(to_decimal_string(x)); }

json exact(const Rational& r) {
    return json{{"exact", to_fraction_string(r)}, {"decimal", decimal(to_double(r))}};
}

json histogram_json(const std::map<std::size_t, std::size_t>& h) {
    json j = json::object();
    for (const auto& [bits, count] : h) j[std::to_string(bits)] = count;
    return j;
}

json config_json(const ExperimentConfig& c) {
    json j;
    j["mode"] = to_string(c.mode);
    switch (c.mode) {
        case Mode::Play:
        case Mode::Exhaustive:
            j["game"] = games::to_string(c.game);
            j["n"] = c.n;
            j["strategy"] = c.strategy;
            if (c.mode == Mode::Play) j["trials"] = c.trials;
            break;
        case Mode::Verify:
            j["n"] = c.n;
            break;
        case Mode::Table:
            j["n_first"] = c.n_first;
            j["n_last"] = c.n_last;
            break;
        case Mode::Lemma:
            if (c.family_path) {
                j["family_path"] = *c.family_path;
            } else {
                j["n"] = c.n;
                j["max_l"] = c.max_l;
            }
            break;
    }
    j["seed"] = c.seed;
    j["format"] = to_string(c.format);
    return j;
}

Report new_report(const ExperimentConfig& c) {
    Report r;
    r.document["config"] = config_json(c);
    r.document["results"] = json::object();
    r.document["checks"] = json::array();
    r.document["version"] = kVersion;
    return r;
}

const char* status(bool ok) { return ok ? "pass" : "fail"; }

games::GameSpec make_game(games::GameKind kind, int n) {
    return kind == games::GameKind::SimpleGame ? games::make_simple_game(n)
                                               : games::make_general_game(n);
}

// ---------------------------------------------------------------------------
// Exact pseudo-telepathy sweeps

struct SweepOutcome {
    bool ok = true;
    std::size_t branches = 0;
    std::string first_failure;
};

std::string describe(const std::vector<int>& players) {
    std::string s = "{";
    for (std::size_t i = 0; i < players.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(players[i]);
    }
    return s + "}";
}

/// Every remaining-outcome branch of every pair: P(branch) = 2^-(n-2) and the
/// chosen outputs are never equal.
SweepOutcome sweep_simple(int n, int workers) {
    auto strategy = strategies::quantum_simple_strategy(n);
    games::GameSpec spec = games::make_simple_game(n);
    auto results = parallel_map(spec.support_size(), workers, [&](std::size_t i) {
        SweepOutcome out;
        const auto& pair = spec.support()[i];
        auto table = strategy->exact_outcomes(pair);
        const Rational branch_p(1, std::int64_t{1} << (n - 2));
        for (std::size_t r = 0; r < table.probability.size(); ++r) {
            ++out.branches;
            const auto& row = table.probability[r];
            const Rational equal = row[0b00] + row[0b11];
            if (table.branch_probability(r) != branch_p || equal != 0) {
                out.ok = false;
                out.first_failure = "pair " + describe(pair) + " branch " + std::to_string(r) +
                                    ": P(equal)=" + to_fraction_string(equal);
                break;
            }
        }
        return out;
    });
    SweepOutcome total;
    for (const auto& r : results) {
        total.branches += r.branches;
        if (!r.ok && total.ok) {
            total.ok = false;
            total.first_failure = r.first_failure;
        }
    }
    return total;
}

/// Even-parity mass is exactly 0 and odd-parity outputs are uniform.
SweepOutcome sweep_general(int n, int workers) {
    auto strategy = strategies::quantum_general_strategy(n);
    games::GameSpec spec = games::make_general_game(n);
    auto results = parallel_map(spec.support_size(), workers, [&](std::size_t i) {
        SweepOutcome out;
        const auto& chosen = spec.support()[i];
        auto table = strategy->exact_outcomes(chosen);
        const std::size_t k = chosen.size();
        const Rational odd_p(1, std::int64_t{1} << (k - 1));
        out.branches = table.probability.size();
        for (std::size_t c = 0; c < (std::size_t{1} << k); ++c) {
            const Rational p = table.chosen_output_probability(c);
            const bool odd = std::popcount(c) % 2 == 1;
            if ((odd && p != odd_p) || (!odd && p != 0)) {
                out.ok = false;
                out.first_failure = "C=" + describe(chosen) + " outputs " + std::to_string(c) +
                                    ": P=" + to_fraction_string(p);
                break;
            }
        }
        return out;
    });
    SweepOutcome total;
    for (const auto& r : results) {
        total.branches += r.branches;
        if (!r.ok && total.ok) {
            total.ok = false;
            total.first_failure = r.first_failure;
        }
    }
    return total;
}

/// Exhaustive over randomness branches for small n, otherwise seeded sampling.
games::ComplexityResult engine_sweep(const games::GameSpec& spec, const games::Strategy& s,
                                     std::uint64_t seed, int workers, std::string& how) {
    if (spec.num_players() <= 7) {
        how = "exhaustive";
        return games::broadcast_complexity(spec, s, games::ComplexityMode::exhaustive_mode(), workers);
    }
    std::size_t trials = std::min<std::size_t>(4 * spec.support_size(), 2048);
    how = "sampled " + std::to_string(trials);
    return games::broadcast_complexity(spec, s, games::ComplexityMode::sampled(trials, seed), workers);
}

void require_n(int n, int lo, int hi, const char* what) {
    if (n < lo || n > hi) {
        throw ArgumentError(std::string(what) + " needs " + std::to_string(lo) + " <= n <= " +
                            std::to_string(hi) + ", got " + std::to_string(n));
    }
}

void flatten(const json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        if (j.empty()) out.emplace_back(path, "{}");
        for (auto it = j.begin(); it != j.end(); ++it) {
            flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
        }
    } else if (j.is_array()) {
        if (j.empty()) out.emplace_back(path, "[]");
        for (std::size_t i = 0; i < j.size(); ++i) {
            flatten(j[i], path + "[" + std::to_string(i) + "]", out);
        }
    } else if (j.is_string()) {
        out.emplace_back(path, j.get<std::string>());
    } else {
        out.emplace_back(path, j.dump());
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

}  // namespace

// ---------------------------------------------------------------------------

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::Play:
            return "play";
        case Mode::Exhaustive:
            return "exhaustive";
        case Mode::Verify:
            return "verify";
        case Mode::Table:
            return "table";
        case Mode::Lemma:
            return "lemma";
    }
    return "?";
}

std::string to_string(OutputFormat format) {
    switch (format) {
        case OutputFormat::Json:
            return "json";
        case OutputFormat::Csv:
            return "csv";
        case OutputFormat::Text:
            return "text";
    }
    return "?";
}

OutputFormat parse_format(const std::string& text) {
    if (text == "json") return OutputFormat::Json;
    if (text == "csv") return OutputFormat::Csv;
    if (text == "text") return OutputFormat::Text;
    throw ArgumentError("unknown format '" + text + "'");
}

games::GameKind parse_game(const std::string& text) {
    if (text == "simple") return games::GameKind::SimpleGame;
    if (text == "general") return games::GameKind::GeneralGame;
    throw ArgumentError("unknown game '" + text + "'");
}

bool Report::all_passed() const {
    for (const auto& c : document.at("checks")) {
        if (c.at("status") == "fail") return false;
    }
    return true;
}

void Report::add_check(const std::string& name, const std::string& st, const std::string& detail) {
    document["checks"].push_back(json{{"name", name}, {"status", st}, {"detail", detail}});
}

Report cmd_play(const ExperimentConfig& config) {
    if (config.mode == Mode::Play && config.trials == 0) {
        throw ArgumentError("play needs --trials >= 1");
    }
    games::GameSpec spec = make_game(config.game, config.n);
    auto strategy = strategies::make_strategy(config.strategy, config.n);
    if (!strategy->supports(config.game)) {
        throw ArgumentError("strategy '" + config.strategy + "' does not play " +
                            games::to_string(config.game));
    }
    Report report = new_report(config);
    json& res = report.document["results"];
    res["instances"] = spec.support_size();
    if (spec.below_standard_minimum()) res["warning"] = "simple game with n < 5";

    if (config.mode == Mode::Exhaustive) {
        auto c = games::broadcast_complexity(spec, *strategy, games::ComplexityMode::exhaustive_mode(),
                                             config.workers);
        res["runs"] = c.runs;
        res["win_probability"] = exact(c.win_rate);
        res["loss_probability"] = exact(1 - c.win_rate);
        res["always_won"] = c.min_won;
        res["broadcast_max_bits"] = c.max_bits;
        res["broadcast_histogram"] = histogram_json(c.bits_histogram);
        return report;
    }

    auto c = games::broadcast_complexity(spec, *strategy,
                                         games::ComplexityMode::sampled(config.trials, config.seed),
                                         config.workers);
    const double t = static_cast<double>(c.runs);
    const double loss = static_cast<double>(c.runs - c.wins) / t;
    res["trials"] = c.runs;
    res["wins"] = c.wins;
    res["losses"] = c.runs - c.wins;
    res["win_rate"] = decimal(1.0 - loss);
    res["loss_rate"] = decimal(loss);
    res["loss_rate_stderr"] = decimal(std::sqrt(loss * (1.0 - loss) / t));
    res["broadcast_max_bits"] = c.max_bits;
    res["broadcast_histogram"] = histogram_json(c.bits_histogram);
    return report;
}

Report cmd_verify(const ExperimentConfig& config) {
    const int n = config.n;
    require_n(n, 2, qsim::kDefaultQubitCap, "verify");
    Report report = new_report(config);
    json& res = report.document["results"];
    const int w = config.workers;

    {
        auto ghz = qsim::make_ghz(n);
        bool ok = ghz.squared_norm() == 1 && !ghz.raw_values().front().is_zero() &&
                  !ghz.raw_values().back().is_zero();
        report.add_check("qsim.ghz_norm", status(ok), "squared norm " + to_fraction_string(ghz.squared_norm()));
    }

    // Simple game, quantum strategy.
    if (n >= 3 && n <= 16) {
        SweepOutcome s = sweep_simple(n, w);
        res["simple_quantum_branches"] = s.branches;
        report.add_check("simple.quantum.exact_zero_loss", status(s.ok),
                         s.ok ? std::to_string(s.branches) + " branches, P(equal outputs) = 0 in each"
                              : s.first_failure);
        std::string how;
        auto c = engine_sweep(games::make_simple_game(n), *strategies::quantum_simple_strategy(n),
                              config.seed, w, how);
        report.add_check("simple.quantum.broadcast_bits", status(c.max_bits == 1 && c.min_won),
                         how + ": max " + std::to_string(c.max_bits) + " bits, all won " +
                             (c.min_won ? "true" : "false"));
    } else {
        report.add_check("simple.quantum.exact_zero_loss", "skip", "needs 3 <= n <= 16");
        report.add_check("simple.quantum.broadcast_bits", "skip", "needs 3 <= n <= 16");
    }

    // General game, quantum strategy.
    if (n <= 12) {
        SweepOutcome s = sweep_general(n, w);
        report.add_check("general.quantum.exact_zero_even_mass", status(s.ok),
                         s.ok ? "even-parity mass 0, odd outputs uniform" : s.first_failure);
        std::string how;
        auto c = engine_sweep(games::make_general_game(n), *strategies::quantum_general_strategy(n),
                              config.seed, w, how);
        report.add_check("general.quantum.broadcast_bits", status(c.max_bits <= 1 && c.min_won),
                         how + ": max " + std::to_string(c.max_bits) + " bits, all won " +
                             (c.min_won ? "true" : "false"));
    } else {
        report.add_check("general.quantum.exact_zero_even_mass", "skip", "needs n <= 12");
        report.add_check("general.quantum.broadcast_bits", "skip", "needs n <= 12");
    }

    // General game, labeling strategy.
    if (n <= 16) {
        auto c = games::broadcast_complexity(games::make_general_game(n),
                                             *strategies::classical_label_strategy(n),
                                             games::ComplexityMode::exhaustive_mode(), w);
        const auto expected = static_cast<std::size_t>(ceil_log2(static_cast<std::uint64_t>(n)));
        const bool exact_bits = c.bits_histogram.size() == 1 && c.bits_histogram.begin()->first == expected;
        res["label_broadcast_bits"] = c.max_bits;
        report.add_check("general.label.wins", status(c.min_won && exact_bits),
                         std::to_string(c.runs) + " instances, " + std::to_string(c.max_bits) +
                             " bits each (expected " + std::to_string(expected) + ")");
    } else {
        report.add_check("general.label.wins", "skip", "needs n <= 16");
    }

    // Classical losing probability.
    if (n >= 5 && n <= 12) {
        Rational formula = strategies::losing_probability_formula(n);
        auto search = bounds::exhaustive_min_loss(n);
        bool balanced = !search.argmin.empty();
        for (const auto& p : search.argmin) {
            balanced = balanced && *std::max_element(p.begin(), p.end()) -
                                           *std::min_element(p.begin(), p.end()) <=
                                       1;
        }
        res["p_formula"] = exact(formula);
        res["p_search"] = exact(search.min_loss);
        report.add_check("simple.formula_oracle", status(formula == search.min_loss && balanced),
                         "p(" + std::to_string(n) + ") = " + to_fraction_string(formula) +
                             ", search " + to_fraction_string(search.min_loss) +
                             (balanced ? ", argmin balanced" : ", argmin unbalanced"));
    } else {
        report.add_check("simple.formula_oracle", "skip", "needs 5 <= n <= 12");
    }

    // Transcript-set lower bound for the simple game.
    if (n <= 16) {
        const int l = bounds::min_transcripts_simple(n);
        const int closed = ceil_log2(static_cast<std::uint64_t>(n));
        // log2 l >= log2 log2 n  <=>  2^l >= n
        const bool bound = (std::uint64_t{1} << l) >= static_cast<std::uint64_t>(n);
        res["l_min_simple"] = l;
        res["broadcast_lower_bound_simple"] = decimal(std::log2(std::log2(static_cast<double>(n))));
        report.add_check("simple.min_transcripts", status(l == closed && bound),
                         "l_min = " + std::to_string(l) + ", ceil(log2 n) = " + std::to_string(closed));
    } else {
        report.add_check("simple.min_transcripts", "skip", "needs n <= 16");
    }
    if (n >= 5 && n <= 16) {
        const bool impossible = !bounds::simple_table_exists(n, 2);
        report.add_check("simple.one_hint_bit_insufficient", status(impossible),
                         impossible ? "no table with 2 histories separates all pairs"
                                    : "a 2-history table exists");
    } else {
        report.add_check("simple.one_hint_bit_insufficient", "skip", "needs 5 <= n <= 16");
    }

    // Appendix lemma chain.
    if (n <= 10) {
        auto chain = bounds::verify_lemma_chain(n);
        res["l_min_general"] = chain.l_min;
        res["appendix_bound"] = decimal(chain.bound);
        res["label_transcripts"] = chain.label_transcripts;
        report.add_check("general.lemma_chain", status(chain.all_hold()),
                         "l_min = " + std::to_string(chain.l_min) + " >= sqrt(n) - 2 = " +
                             to_decimal_string(chain.bound) + "; |M_label| = " +
                             std::to_string(chain.label_transcripts) + " <= " +
                             std::to_string(chain.label_upper_bound));
    } else {
        report.add_check("general.lemma_chain", "skip", "needs n <= 10");
    }
    return report;
}

Report cmd_table(const ExperimentConfig& config) {
    const int first = std::max(5, config.n_first);
    const int last = config.n_last;
    if (last < first || last > 1000) {
        throw ArgumentError("table range must lie within [5, 1000]");
    }
    Report report = new_report(config);
    json rows = json::array();
    bool below_quarter = true;
    for (int n = first; n <= last; ++n) {
        const double dn = n;
        Rational p = strategies::losing_probability_formula(n);
        below_quarter = below_quarter && p < Rational(1, 4);
        json row;
        row["n"] = n;
        row["p_exact"] = to_fraction_string(p);
        row["p_decimal"] = decimal(to_double(p));
        row["ceil_log2_n"] = ceil_log2(static_cast<std::uint64_t>(n));
        row["log2_log2_n"] = decimal(std::log2(std::log2(dn)));
        row["half_log2_n_minus_2"] = decimal(0.5 * std::log2(dn) - 2.0);
        row["sqrt_n_minus_2"] = decimal(bounds::appendix_bound(n));
        row["l_min_simple"] = n <= 16 ? json(bounds::min_transcripts_simple(n)) : json(nullptr);
        row["l_min_general"] = n <= 10 ? json(bounds::min_dimension_general(n)) : json(nullptr);
        rows.push_back(row);
    }
    report.document["results"]["rows"] = rows;
    report.add_check("table.below_quarter", status(below_quarter), "p(n) < 1/4 on every row");
    return report;
}

Report cmd_lemma(const ExperimentConfig& config) {
    Report report = new_report(config);
    json& res = report.document["results"];
    if (config.family_path) {
        std::ifstream in(*config.family_path);
        if (!in) throw ArgumentError("cannot read family file '" + *config.family_path + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        bounds::GF2Family family = bounds::GF2Family::parse(buffer.str());
        const int n = family.size();
        const int l = family.dimension();
        const bool condition = bounds::check_gf2_condition(family);
        const bool bound = (l + 2) * (l + 2) >= n;
        res["n"] = n;
        res["l"] = l;
        res["condition_holds"] = condition;
        res["sqrt_n_minus_2"] = decimal(bounds::appendix_bound(n));
        res["l_ge_bound"] = bound;
        report.add_check("lemma.consistent", status(!condition || bound),
                         condition ? "condition holds, so l >= sqrt(n) - 2 must hold"
                                   : "condition fails; bound not implied");
        return report;
    }
    require_n(config.n, 1, 24, "lemma search");
    if (config.max_l < 1 || config.max_l > 16) throw ArgumentError("--max-l must be in [1, 16]");
    res["n"] = config.n;
    res["sqrt_n_minus_2"] = decimal(bounds::appendix_bound(config.n));
    for (int l = 1; l <= config.max_l; ++l) {
        if (auto family = bounds::find_gf2_family(config.n, l)) {
            res["l_min"] = l;
            json witness = json::array();
            for (auto v : family->vectors()) {
                witness.push_back(BitString::from_uint(v, static_cast<std::size_t>(l)).to_string());
            }
            res["witness"] = witness;
            const bool bound = (l + 2) * (l + 2) >= config.n;
            report.add_check("lemma.bound", status(bound && bounds::check_gf2_condition(*family)),
                             "l_min = " + std::to_string(l) + " >= sqrt(n) - 2");
            return report;
        }
    }
    res["l_min"] = nullptr;
    report.add_check("lemma.bound", "skip", "no family up to --max-l " + std::to_string(config.max_l));
    return report;
}

Report run(const ExperimentConfig& config) {
    switch (config.mode) {
        case Mode::Play:
        case Mode::Exhaustive:
            return cmd_play(config);
        case Mode::Verify:
            return cmd_verify(config);
        case Mode::Table:
            return cmd_table(config);
        case Mode::Lemma:
            return cmd_lemma(config);
    }
    throw ArgumentError("unknown mode");
}

std::string render(const Report& report, OutputFormat format) {
    if (format == OutputFormat::Json) {
        return report.document.dump(2) + "\n";
    }
    std::vector<std::pair<std::string, std::string>> flat;
    flatten(report.document, "", flat);
    std::string out = format == OutputFormat::Csv ? "path,value\n" : "";
    for (const auto& [path, value] : flat) {
        out += format == OutputFormat::Csv ? csv_field(path) + "," + csv_field(value)
                                           : path + " = " + value;
        out += '\n';
    }
    return out;
}

}  // namespace nlgame::harness
