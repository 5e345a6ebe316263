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

#include "cellless/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <thread>
#include <utility>

#include "CLI11.hpp"

#include "cellless/config_io.hpp"
#include "cellless/errors.hpp"
#include "cellless/experiments.hpp"
#include "cellless/report.hpp"
#include "cellless/validation.hpp"

namespace cellless {

namespace {

std::string trim_copy(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return {};
    return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

double to_double(const std::string& text) {
    std::size_t used = 0;
    const std::string t = trim_copy(text);
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (t.empty() || used != t.size()) throw ConfigError("", "not a number: '" + text + "'");
    return v;
}

} // namespace

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    if (trim_copy(text).empty()) return out;
    if (text.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::size_t start = 0;
        for (;;) {
            const auto colon = text.find(':', start);
            parts.push_back(to_double(text.substr(start, colon - start)));
            if (colon == std::string::npos) break;
            start = colon + 1;
        }
        if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
            throw ConfigError("", "range must be lo:hi:step with step > 0 and lo <= hi: '" + text + "'");
        }
        // Integer step count avoids accumulating the step.
        const auto steps = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
        for (long i = 0; i <= steps; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[2]);
        return out;
    }
    std::size_t start = 0;
    for (;;) {
        const auto comma = text.find(',', start);
        out.push_back(to_double(text.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<std::size_t> parse_count_list(const std::string& text) {
    std::vector<std::size_t> out;
    for (double v : parse_double_list(text)) {
        if (v < 0.0 || v != std::floor(v)) throw ConfigError("", "expected non-negative integers: '" + text + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

namespace {

struct Invocation {
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> overrides;
    std::string output_path;
    std::string format = "csv";
    std::string event_log_path;
    std::size_t workers = 1;
    bool no_cache = false;
    bool unicast = false;

    std::string thresholds = "-15:5:1";
    bool fixed_deployment = false;
    std::string cellular_association = "nearest-idle";
    std::string sleeping_counts = "0:10:1";
    std::string bs_group_sizes = "2,3,4";
    std::size_t n_users = 10;
    std::string mt_group_sizes = "1,2,3,4,5";
    std::size_t instances = 1000;
};

void add_common_options(CLI::App* sub, Invocation& inv) {
    sub->add_option("--config", inv.config_path, "flat key = value config file; flags override it");
    const ScenarioConfig defaults;
    for (const auto& field : config_fields()) {
        const std::string key(field.key);
        const std::string help = std::string(field.description) + " [" + std::string(field.unit) +
                                 "] (default: " + get_config_field(defaults, key) + ")";
        sub->add_option_function<std::string>(
               "--" + key, [&inv, key](const std::string& value) { inv.overrides.emplace_back(key, value); }, help)
            ->type_name("VALUE");
    }
    sub->add_option("--output,-o", inv.output_path, "report destination (default: stdout)");
    sub->add_option("--format", inv.format, "report format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--workers,-j", inv.workers, "worker threads; never changes results")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

ScenarioConfig resolve_config(const Invocation& inv) {
    ScenarioConfig cfg;
    if (!inv.config_path.empty()) cfg = load_config(inv.config_path);
    for (const auto& [key, value] : inv.overrides) set_config_field(cfg, key, value);
    cfg.validate();
    return cfg;
}

void write_report(const ExperimentReport& report, const Invocation& inv, std::ostream& out) {
    auto write = [&](std::ostream& sink) {
        if (inv.format == "json") sink << to_json(report).dump(2) << '\n';
        else emit_csv(report, sink);
    };
    if (inv.output_path.empty()) {
        write(out);
        return;
    }
    std::ofstream file(inv.output_path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoFailure("cannot open " + inv.output_path + " for writing");
    write(file);
    file.flush();
    if (!file) throw IoFailure("write to " + inv.output_path + " failed");
}

void write_events(const std::vector<GroupEvent>& events, const std::string& path) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoFailure("cannot open " + path + " for writing");
    for (const auto& e : events) write_event(file, e);
    if (!file) throw IoFailure("write to " + path + " failed");
}

int run_validate(const Invocation& inv, std::ostream& out) {
    const ScenarioConfig cfg = resolve_config(inv);
    const std::vector<std::pair<std::string, std::function<ValidationCheck()>>> suites{
        {"greedy vs exhaustive grouping", [&] { return validate_grouping(cfg, inv.instances); }},
        {"bisection vs closed-form MT power", [&] { return validate_power_solver(cfg, inv.instances); }},
        {"state-machine legality", [&] { return validate_state_machine(cfg); }},
        {"determinism across worker counts", [&] { return validate_determinism(cfg, 200, inv.workers); }},
    };
    bool all_passed = true;
    for (const auto& [name, suite] : suites) {
        ValidationCheck check;
        try {
            check = suite();
        } catch (const Error& e) {
            check = {name, false, std::string("error: ") + e.what()};
        }
        all_passed = all_passed && check.passed;
        out << (check.passed ? "[PASS] " : "[FAIL] ") << check.name << ": " << check.detail << '\n';
    }
    return all_passed ? kExitOk : kExitValidationFailure;
}

int run_experiment(const std::string& experiment, const Invocation& inv, std::ostream& out, std::ostream& err) {
    const ScenarioConfig cfg = resolve_config(inv);
    RunOptions options;
    options.workers = inv.workers;
    options.use_cache = !inv.no_cache;
    options.multicast = !inv.unicast;
    std::vector<GroupEvent> events;
    if (!inv.event_log_path.empty()) options.events = &events;

    const auto start = std::chrono::steady_clock::now();
    CurvePayload payload;
    if (experiment == kCoverageLabel) {
        options.fixed_deployment = inv.fixed_deployment;
        options.cellular = inv.cellular_association == "nearest" ? CellularAssociation::NearestAny
                                                                 : CellularAssociation::NearestIdle;
        payload = run_coverage(cfg, parse_double_list(inv.thresholds), options);
    } else if (experiment == kBsEnergyLabel) {
        payload = run_bs_energy(cfg, parse_count_list(inv.sleeping_counts), parse_count_list(inv.bs_group_sizes),
                                inv.n_users, options);
    } else {
        payload = run_mt_energy(cfg, parse_count_list(inv.mt_group_sizes), options);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const ExperimentReport report = make_report(experiment, cfg, std::move(payload), seconds);
    write_report(report, inv, out);
    if (!inv.event_log_path.empty()) write_events(events, inv.event_log_path);
    err << summarize(report) << " (" << format_number(seconds) << " s)\n";
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Invocation inv;
    CLI::App app{"Monte Carlo simulator for converged cell-less networks", "cellless-sim"};
    app.require_subcommand(1, 1);

    auto* coverage = app.add_subcommand("coverage", "coverage probability vs SINR threshold, cellular vs cell-less");
    add_common_options(coverage, inv);
    coverage->add_option("--thresholds", inv.thresholds, "SINR thresholds in dB, lo:hi:step or a,b,c")
        ->capture_default_str();
    coverage->add_flag("--fixed-deployment", inv.fixed_deployment, "keep one deployment, redraw fading only");
    coverage->add_option("--cellular-association", inv.cellular_association, "cellular baseline server choice")
        ->check(CLI::IsMember({"nearest-idle", "nearest"}))
        ->capture_default_str();
    coverage->add_option("--event-log", inv.event_log_path, "per-decision group log");
    coverage->add_flag("--no-cache", inv.no_cache, "disable the pre-grouping cache");
    coverage->add_flag("--unicast", inv.unicast, "count backhaul deliveries without multicast");

    auto* bs_energy = app.add_subcommand("bs-energy", "BS power saving vs sleeping count per group size");
    add_common_options(bs_energy, inv);
    bs_energy->add_option("--sleeping-counts", inv.sleeping_counts, "sleeping BS counts, lo:hi:step or a,b,c")
        ->capture_default_str();
    bs_energy->add_option("--group-sizes", inv.bs_group_sizes, "cooperative group sizes k")->capture_default_str();
    bs_energy->add_option("--n-users", inv.n_users, "served MTs")->check(CLI::PositiveNumber)->capture_default_str();
    bs_energy->add_option("--event-log", inv.event_log_path, "per-decision group log");
    bs_energy->add_flag("--no-cache", inv.no_cache, "disable the pre-grouping cache");
    bs_energy->add_flag("--unicast", inv.unicast, "count backhaul deliveries without multicast");

    auto* mt_energy = app.add_subcommand("mt-energy", "MT uplink power saving vs joint-reception group size");
    add_common_options(mt_energy, inv);
    mt_energy->add_option("--group-sizes", inv.mt_group_sizes, "joint-reception group sizes N")->capture_default_str();

    auto* validate = app.add_subcommand("validate", "run the oracle suites; exit 1 on any failure");
    add_common_options(validate, inv);
    validate->add_option("--instances", inv.instances, "random instances per oracle suite")->capture_default_str();

    std::vector<const char*> argv{"cellless-sim"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (validate->parsed()) return run_validate(inv, out);
        const std::string experiment = coverage->parsed() ? std::string(kCoverageLabel)
                                       : bs_energy->parsed() ? std::string(kBsEnergyLabel)
                                                             : std::string(kMtEnergyLabel);
        return run_experiment(experiment, inv, out, err);
    } catch (const ConfigError& e) {
        err << "config error";
        if (!e.key().empty()) err << " [" << e.key() << "]";
        err << ": " << e.what() << '\n';
        return kExitConfigError;
    } catch (const IoFailure& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitValidationFailure;
    } catch (const Error& e) {
        // Placement failures, infeasible sweeps and bad sweep values all
        // come from the requested configuration.
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }
}

} // namespace cellless
