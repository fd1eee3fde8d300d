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

#include <cstdio>
#include <fstream>

#include <gtest/gtest.h>

#include "nlgame/errors.hpp"

namespace {

using namespace nlgame;
using namespace nlgame::harness;

ExperimentConfig config_for(Mode mode) {
    ExperimentConfig c;
    c.mode = mode;
    return c;
}

TEST(Harness, TopLevelKeys) {
    Report r = run(config_for(Mode::Verify));
    std::vector<std::string> keys;
    for (auto it = r.document.begin(); it != r.document.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"config", "results", "checks", "version"}));
    EXPECT_EQ(r.document["version"], kVersion);
    EXPECT_TRUE(r.all_passed());
}

TEST(Harness, VerifyIsReproducible) {
    ExperimentConfig c = config_for(Mode::Verify);
    c.n = 7;
    EXPECT_EQ(render(run(c), OutputFormat::Json), render(run(c), OutputFormat::Json));
    ExperimentConfig parallel = c;
    parallel.workers = 3;
    EXPECT_EQ(render(run(c), OutputFormat::Json), render(run(parallel), OutputFormat::Json));
}

TEST(Harness, VerifyAcrossSizes) {
    for (int n : {2, 3, 4, 6, 9}) {
        ExperimentConfig c = config_for(Mode::Verify);
        c.n = n;
        Report r = run(c);
        EXPECT_TRUE(r.all_passed()) << render(r, OutputFormat::Text);
    }
    ExperimentConfig c = config_for(Mode::Verify);
    c.n = 1;
    EXPECT_THROW(run(c), ArgumentError);
}

TEST(Harness, FormatsCarryTheSameValues) {
    ExperimentConfig c = config_for(Mode::Table);
    c.n_first = 5;
    c.n_last = 8;
    Report r = run(c);
    std::string csv = render(r, OutputFormat::Csv);
    std::string text = render(r, OutputFormat::Text);
    EXPECT_EQ(csv.rfind("path,value\n", 0), 0U);
    EXPECT_NE(csv.find("results.rows[0].p_exact,1/10\n"), std::string::npos);
    EXPECT_NE(text.find("results.rows[0].p_exact = 1/10\n"), std::string::npos);
    EXPECT_NE(csv.find("results.rows[3].p_exact,1/7\n"), std::string::npos);
    auto parsed = nlohmann::ordered_json::parse(render(r, OutputFormat::Json));
    EXPECT_EQ(parsed["results"]["rows"][1]["p_exact"], "2/15");
    EXPECT_EQ(parsed["results"]["rows"][1]["p_decimal"], 0.133333333333);
}

TEST(Harness, TableColumns) {
    ExperimentConfig c = config_for(Mode::Table);
    c.n_first = 2;
    c.n_last = 17;
    Report r = run(c);
    const auto& rows = r.document["results"]["rows"];
    EXPECT_EQ(rows.front()["n"], 5);
    EXPECT_EQ(rows.size(), 13U);
    EXPECT_EQ(rows[11]["l_min_simple"], 4);     // n = 16
    EXPECT_TRUE(rows[12]["l_min_simple"].is_null());
    EXPECT_TRUE(rows[6]["l_min_general"].is_null());  // n = 11
    EXPECT_TRUE(r.all_passed());
    c.n_last = 4;
    EXPECT_THROW(run(c), ArgumentError);
}

TEST(Harness, PlaySampled) {
    ExperimentConfig c = config_for(Mode::Play);
    c.n = 8;
    c.strategy = "classical-atoms:balanced";
    c.trials = 20000;
    Report r = run(c);
    const auto& res = r.document["results"];
    EXPECT_EQ(res["trials"], 20000);
    EXPECT_EQ(res["broadcast_max_bits"], 1);
    // p(8) = 1/7 within five standard errors.
    double loss = res["loss_rate"];
    double se = res["loss_rate_stderr"];
    EXPECT_NEAR(loss, 1.0 / 7.0, 5 * se);
    c.trials = 0;
    EXPECT_THROW(run(c), ArgumentError);
}

TEST(Harness, PlayExhaustiveIsExact) {
    ExperimentConfig c = config_for(Mode::Exhaustive);
    c.n = 8;
    c.strategy = "classical-atoms:balanced";
    EXPECT_EQ(run(c).document["results"]["loss_probability"]["exact"], "1/7");
    c.strategy = "quantum-simple";
    c.n = 6;
    EXPECT_EQ(run(c).document["results"]["win_probability"]["exact"], "1");
}

TEST(Harness, PlayRejectsMismatches) {
    ExperimentConfig c = config_for(Mode::Play);
    c.game = games::GameKind::GeneralGame;
    c.strategy = "quantum-simple";
    EXPECT_THROW(run(c), ArgumentError);
    c.strategy = "nope";
    EXPECT_THROW(run(c), ArgumentError);
    c.game = games::GameKind::SimpleGame;
    c.n = 4;
    c.strategy = "quantum-simple";
    EXPECT_EQ(run(c).document["results"]["warning"], "simple game with n < 5");
}

TEST(Harness, LemmaSearchAndFile) {
    ExperimentConfig c = config_for(Mode::Lemma);
    c.n = 6;
    Report search = run(c);
    EXPECT_EQ(search.document["results"]["l_min"], 3);
    EXPECT_TRUE(search.all_passed());

    const std::string path = ::testing::TempDir() + "family.txt";
    {
        std::ofstream f(path);
        f << "# six vectors\n0000\n0001\n0010\n0100\n1000\n1111\n";
    }
    c.family_path = path;
    Report file = run(c);
    EXPECT_EQ(file.document["results"]["condition_holds"], false);
    EXPECT_EQ(file.document["results"]["l"], 4);
    EXPECT_TRUE(file.all_passed());
    std::remove(path.c_str());

    c.family_path = "/nonexistent/family.txt";
    EXPECT_THROW(run(c), ArgumentError);
}

TEST(Harness, Parsing) {
    EXPECT_EQ(parse_format("csv"), OutputFormat::Csv);
    EXPECT_EQ(parse_game("general"), games::GameKind::GeneralGame);
    EXPECT_THROW(parse_format("xml"), ArgumentError);
    EXPECT_THROW(parse_game("hard"), ArgumentError);
}

}  // namespace
