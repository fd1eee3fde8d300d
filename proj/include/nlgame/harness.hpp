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

#ifndef NLGAME_HARNESS_HPP
#define NLGAME_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "nlgame/games.hpp"
#include "nlgame/random.hpp"

namespace nlgame::harness {

inline constexpr const char* kVersion = "nlgame 1.0.0";

enum class Mode { Play, Exhaustive, Verify, Table, Lemma };
enum class OutputFormat { Json, Csv, Text };

struct ExperimentConfig {
    games::GameKind game = games::GameKind::SimpleGame;
    int n = 5;
    std::string strategy = "quantum-simple";
    Mode mode = Mode::Play;
    std::size_t trials = 1000;
    std::uint64_t seed = kDefaultSeed;
    std::optional<std::string> output_path;
    OutputFormat format = OutputFormat::Text;
    int workers = 1;
    /// Inclusive n-range for the table command.
    int n_first = 5;
    int n_last = 64;
    /// Largest dimension tried by the lemma search.
    int max_l = 8;
    /// GF(2) family file for the lemma command.
    std::optional<std::string> family_path;
};

std::string to_string(Mode mode);
std::string to_string(OutputFormat format);
OutputFormat parse_format(const std::string& text);
games::GameKind parse_game(const std::string& text);

/// Top-level keys: config, results, checks, version. Every check is an
/// object {name, status, detail} with status pass, fail or skip.
struct Report {
    nlohmann::ordered_json document;

    bool all_passed() const;
    void add_check(const std::string& name, const std::string& status, const std::string& detail);
};

/// Usage errors (bad config) surface as ArgumentError.
Report cmd_play(const ExperimentConfig& config);
Report cmd_verify(const ExperimentConfig& config);
Report cmd_table(const ExperimentConfig& config);
Report cmd_lemma(const ExperimentConfig& config);

/// Dispatches on config.mode.
Report run(const ExperimentConfig& config);

/// json: pretty-printed document. csv: "path,value" rows over the flattened
/// document. text: "path = value" lines. All three carry the same values.
std::string render(const Report& report, OutputFormat format);

}  // namespace nlgame::harness

#endif  // NLGAME_HARNESS_HPP
