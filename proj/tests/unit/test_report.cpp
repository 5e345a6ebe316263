// SPDX-License-Identifier: Apache-2.0
//
// cellless: Monte Carlo simulator for converged cell-less radio access networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"

#include "cellless/config_io.hpp"
#include "cellless/errors.hpp"
#include "cellless/report.hpp"

using namespace cellless;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell);
    return out;
}

CoverageCurve two_point_curve() {
    CoverageCurve c;
    c.thresholds_db = {-1.0, 2.5};
    c.cellular_prob = {0.5, 0.25};
    c.cellular_ci95 = {0.01, 0.02};
    c.cellless_prob = {0.75, 1.0 / 3.0};
    c.cellless_ci95 = {0.03, 0.04};
    c.n_trials = 400;
    return c;
}

} // namespace

TEST_CASE("git_blob_sha1 matches git hash-object") {
    CHECK(git_blob_sha1("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
    CHECK(git_blob_sha1("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
}

TEST_CASE("config_hash changes exactly when a field changes") {
    const ScenarioConfig base;
    CHECK(config_hash(base) == git_blob_sha1(canonical_config_text(base)));
    CHECK(config_hash(base) == config_hash(ScenarioConfig{}));
    for (const auto& field : config_fields()) {
        ScenarioConfig changed = base;
        if (field.key == "state_power_mw") {
            changed.state_power_mw.sleeping_mw = 11.0;
        } else if (field.key == "seed" || field.key.starts_with("n_") || field.key == "max_group_size") {
            set_config_field(changed, field.key, "7");
        } else {
            set_config_field(changed, field.key, "0.75");
        }
        CHECK_MESSAGE(config_hash(changed) != config_hash(base), field.key);
    }
}

TEST_CASE("coverage CSV layout") {
    ScenarioConfig cfg;
    cfg.seed = 42;
    const ExperimentReport report = make_report("coverage", cfg, two_point_curve());
    const auto lines = lines_of(to_csv(report));
    REQUIRE(lines.size() == 7);
    CHECK(lines[0] == "# experiment=coverage");
    CHECK(lines[1] == "# config_hash=" + config_hash(cfg));
    CHECK(lines[2] == "# seed=42");
    CHECK(lines[3] == "# n_trials=400");
    CHECK(lines[4] == "threshold_db,cellular,cellular_ci95,cellless,cellless_ci95");
    CHECK(lines[5] == "-1,0.5,0.01,0.75,0.03");
    CHECK(lines[6] == "2.5,0.25,0.02,0.333333333,0.04");
    CHECK(to_csv(report).find('\r') == std::string::npos);
}

TEST_CASE("CSV values parse back within print precision") {
    const ExperimentReport report = make_report("coverage", ScenarioConfig{}, two_point_curve());
    const auto lines = lines_of(to_csv(report));
    const CoverageCurve& c = std::get<CoverageCurve>(report.payload);
    for (std::size_t i = 0; i < c.thresholds_db.size(); ++i) {
        const auto cells = split(lines[5 + i]);
        REQUIRE(cells.size() == 5);
        CHECK(std::stod(cells[0]) == c.thresholds_db[i]);
        CHECK(std::stod(cells[3]) == doctest::Approx(c.cellless_prob[i]).epsilon(1e-9));
    }
}

TEST_CASE("empty sweeps emit the header only") {
    CoverageCurve empty;
    const ExperimentReport report = make_report("coverage", ScenarioConfig{}, empty);
    const auto lines = lines_of(to_csv(report));
    CHECK(lines.size() == 5);
    CHECK(summarize(report) == "coverage: no data");
}

TEST_CASE("bs-energy and mt-energy CSV columns") {
    BsEnergyCurve b;
    b.sleeping_counts = {0, 1};
    b.group_sizes = {2, 3};
    b.saving = {{0.0, 0.1}, {0.0, 0.05}};
    b.ci95 = {{0.0, 0.0}, {0.0, 0.0}};
    b.n_trials = 5;
    const auto bl = lines_of(to_csv(make_report("bs-energy", ScenarioConfig{}, b)));
    CHECK(bl[4] == "sleeping_count,saving_k2,saving_k2_ci95,saving_k3,saving_k3_ci95");
    CHECK(bl[6] == "1,0.1,0,0.05,0");

    MtEnergyCurve m;
    m.group_sizes = {1, 2};
    m.saving = {0.0, 0.5};
    m.ci95 = {0.0, 0.01};
    m.n_trials = 5;
    const auto ml = lines_of(to_csv(make_report("mt-energy", ScenarioConfig{}, m)));
    CHECK(ml[4] == "group_size,saving,saving_ci95");
    CHECK(ml[6] == "2,0.5,0.01");
}

TEST_CASE("identical runs give byte-identical CSV") {
    ScenarioConfig cfg;
    cfg.n_trials = 200;
    const std::vector<double> thresholds{-5.0, 0.0, 5.0};
    const std::string a = to_csv(make_report("coverage", cfg, run_coverage(cfg, thresholds), 1.0));
    const std::string b = to_csv(make_report("coverage", cfg, run_coverage(cfg, thresholds), 2.0));
    CHECK(a == b);
}

TEST_CASE("emit_csv to a path") {
    const auto path = std::filesystem::temp_directory_path() / "cellless_report_test.csv";
    const ExperimentReport report = make_report("coverage", ScenarioConfig{}, two_point_curve());
    emit_csv(report, path);
    std::ifstream in(path, std::ios::binary);
    std::stringstream contents;
    contents << in.rdbuf();
    CHECK(contents.str() == to_csv(report));
    std::filesystem::remove(path);
    CHECK_THROWS_AS(emit_csv(report, std::filesystem::path("/nonexistent-dir/x.csv")), IoFailure);
}

TEST_CASE("json report echoes the config") {
    const ExperimentReport report = make_report("coverage", ScenarioConfig{}, two_point_curve(), 1.5);
    const nlohmann::json j = to_json(report);
    CHECK(j["experiment"] == "coverage");
    CHECK(j["config_hash"] == config_hash(ScenarioConfig{}));
    CHECK(j["config"]["n_bs"] == 50);
    CHECK(j["wall_seconds"] == 1.5);
    CHECK(j["curve"]["points"].size() == 2);
}

TEST_CASE("summaries report PASS and FAIL with the failing point") {
    CoverageCurve good = two_point_curve();
    CHECK(summarize(make_report("coverage", ScenarioConfig{}, good)).find("cellular at all thresholds: PASS") !=
          std::string::npos);

    CoverageCurve bad = two_point_curve();
    bad.cellless_prob[1] = 0.1;
    const std::string s = summarize(make_report("coverage", ScenarioConfig{}, bad));
    CHECK(s.find("FAIL at threshold_db = 2.5") != std::string::npos);

    const ScenarioConfig cfg;
    BsEnergyCurve b;
    b.sleeping_counts = {0, 1, 2};
    b.group_sizes = {2, 3};
    b.n_users = 10;
    for (std::size_t k : b.group_sizes) {
        std::vector<double> row;
        for (std::size_t sc : b.sleeping_counts) row.push_back(bs_energy_closed_form(cfg, sc, k, 10));
        b.saving.push_back(row);
        b.ci95.push_back(std::vector<double>(row.size(), 0.0));
    }
    const std::string bs = summarize(make_report("bs-energy", cfg, b));
    CHECK(bs.find("saving linear in s: PASS") != std::string::npos);
    CHECK(bs.find("ordering k=2≥k=3: PASS") != std::string::npos);

    b.saving[1][2] = b.saving[0][2] + 0.01;
    const std::string swapped = summarize(make_report("bs-energy", cfg, b));
    CHECK(swapped.find("ordering k=2≥k=3: FAIL at s = 2") != std::string::npos);

    MtEnergyCurve m;
    m.group_sizes = {1, 2, 3};
    m.saving = {0.0, 0.3, 0.2};
    m.ci95 = {0.0, 0.0, 0.0};
    const std::string ms = summarize(make_report("mt-energy", cfg, m));
    CHECK(ms.find("saving zero at N=1: PASS") != std::string::npos);
    CHECK(ms.find("saving non-decreasing in N: FAIL at N = 3") != std::string::npos);
}

TEST_CASE("format_number uses nine significant digits") {
    CHECK(format_number(1.0 / 3.0) == "0.333333333");
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(1e-12) == "1e-12");
    CHECK(format_number(-15.0) == "-15");
}
