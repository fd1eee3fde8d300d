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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nlgame/errors.hpp"
#include "nlgame/harness.hpp"
#include "nlgame/parallel.hpp"

namespace {

using nlgame::harness::ExperimentConfig;
using nlgame::harness::Mode;

/// "A:B" sets the table range, a single number sets n.
void apply_n(ExperimentConfig& config, const std::string& text) {
    auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            config.n = std::stoi(text);
            config.n_last = config.n;
            config.n_first = config.n;
        } else {
            config.n_first = std::stoi(text.substr(0, colon));
            config.n_last = std::stoi(text.substr(colon + 1));
        }
    } catch (const std::logic_error&) {
        throw nlgame::ArgumentError("bad --n value '" + text + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Broadcast-complexity experiments for GHZ pseudo-telepathy games"};
    app.set_version_flag("--version", std::string(nlgame::harness::kVersion));
    app.require_subcommand(1);

    std::string game = "simple";
    std::string n_text;
    std::string strategy = "quantum-simple";
    std::size_t trials = 1000;
    std::uint64_t seed = nlgame::kDefaultSeed;
    std::string format = "text";
    std::string out;
    int max_l = 8;
    bool exhaustive = false;
    std::string family;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--out", out, "write the report here instead of stdout");
        sub->add_option("--seed", seed, "random seed");
    };

    auto* play = app.add_subcommand("play", "play a game with a strategy");
    play->add_option("--game", game, "simple or general")->check(CLI::IsMember({"simple", "general"}));
    play->add_option("--n", n_text, "number of players");
    play->add_option("--strategy", strategy, "strategy name");
    play->add_option("--trials", trials, "sampled runs");
    play->add_flag("--exhaustive", exhaustive, "enumerate every instance and outcome branch");
    add_common(play);

    auto* verify = app.add_subcommand("verify", "run the exact checks for one n");
    verify->add_option("--n", n_text, "number of players");
    add_common(verify);

    auto* table = app.add_subcommand("table", "tabulate p(n) and the bounds");
    table->add_option("--n", n_text, "N or A:B");
    add_common(table);

    auto* lemma = app.add_subcommand("lemma", "GF(2) family search or check");
    lemma->add_option("--n", n_text, "number of vectors");
    lemma->add_option("--max-l", max_l, "largest dimension searched");
    lemma->add_option("--file", family, "family file to check");
    add_common(lemma);

    CLI11_PARSE(app, argc, argv);

    ExperimentConfig config;
    config.workers = nlgame::default_workers();
    try {
        if (!n_text.empty()) apply_n(config, n_text);
        config.game = nlgame::harness::parse_game(game);
        config.strategy = strategy;
        config.trials = trials;
        config.seed = seed;
        config.format = nlgame::harness::parse_format(format);
        config.max_l = max_l;
        if (!out.empty()) config.output_path = out;
        if (!family.empty()) config.family_path = family;
        if (play->parsed()) {
            config.mode = exhaustive ? Mode::Exhaustive : Mode::Play;
        } else if (verify->parsed()) {
            config.mode = Mode::Verify;
        } else if (table->parsed()) {
            config.mode = Mode::Table;
            if (n_text.empty()) {
                config.n_first = 5;
                config.n_last = 64;
            }
        } else {
            config.mode = Mode::Lemma;
        }

        auto report = nlgame::harness::run(config);
        std::string text = nlgame::harness::render(report, config.format);
        if (config.output_path) {
            std::ofstream file(*config.output_path, std::ios::binary);
            if (!file) throw nlgame::ArgumentError("cannot write '" + *config.output_path + "'");
            file << text;
        } else {
            std::cout << text;
        }
        return report.all_passed() ? 0 : 1;
    } catch (const nlgame::ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlgame::SizeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
