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

#include <sstream>
#include <string>
#include <vector>

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cellless/channel.hpp"
#include "cellless/cli.hpp"
#include "cellless/config_io.hpp"
#include "cellless/errors.hpp"
#include "cellless/experiments.hpp"
#include "cellless/report.hpp"
#include "cellless/scenario.hpp"
#include "cellless/validation.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace cellless;

namespace {

// Config values arrive as Python objects; route them through the strict text parser.
std::string field_text(const py::handle& value) {
    if (py::isinstance<py::list>(value) || py::isinstance<py::tuple>(value)) {
        std::string out;
        for (const auto& item : value) out += (out.empty() ? "" : ",") + py::str(item).cast<std::string>();
        return out;
    }
    return py::str(value).cast<std::string>();
}

ScenarioConfig config_from_kwargs(const py::kwargs& overrides) {
    ScenarioConfig cfg;
    for (const auto& [key, value] : overrides) set_config_field(cfg, key.cast<std::string>(), field_text(value));
    cfg.validate();
    return cfg;
}

RunOptions run_options(std::size_t workers) {
    RunOptions options;
    options.workers = workers;
    return options;
}

std::string csv_for(const std::string& experiment, const ScenarioConfig& cfg, CurvePayload payload) {
    return to_csv(make_report(experiment, cfg, std::move(payload)));
}

} // namespace

PYBIND11_MODULE(_cellless, m) {
    m.doc() = "Monte Carlo simulator for converged cell-less radio access networks";

    // Later registrations are tried first, so ConfigError wins over the base class.
    auto& base_error = py::register_exception<Error>(m, "CelllessError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", base_error.ptr());

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init(&config_from_kwargs), "Defaults with keyword overrides, e.g. ScenarioConfig(n_bs=60)")
        .def_readwrite("area_side_m", &ScenarioConfig::area_side_m)
        .def_readwrite("n_bs", &ScenarioConfig::n_bs)
        .def_readwrite("n_busy_bs", &ScenarioConfig::n_busy_bs)
        .def_readwrite("n_candidates", &ScenarioConfig::n_candidates)
        .def_readwrite("max_group_size", &ScenarioConfig::max_group_size)
        .def_property(
            "state_power_mw",
            [](const ScenarioConfig& c) {
                const StatePower& p = c.state_power_mw;
                return py::make_tuple(p.sleeping_mw, p.listening_mw, p.ready_mw, p.transferring_mw);
            },
            [](ScenarioConfig& c, const py::object& value) { set_config_field(c, "state_power_mw", field_text(value)); })
        .def_readwrite("bs_tx_power_mw", &ScenarioConfig::bs_tx_power_mw)
        .def_readwrite("mt_tx_power_mw", &ScenarioConfig::mt_tx_power_mw)
        .def_readwrite("path_loss_exponent", &ScenarioConfig::path_loss_exponent)
        .def_readwrite("reference_distance_m", &ScenarioConfig::reference_distance_m)
        .def_readwrite("noise_power_mw", &ScenarioConfig::noise_power_mw)
        .def_readwrite("min_distance_m", &ScenarioConfig::min_distance_m)
        .def_readwrite("n_trials", &ScenarioConfig::n_trials)
        .def_readwrite("seed", &ScenarioConfig::seed)
        .def("validate", &ScenarioConfig::validate)
        .def("to_text", &canonical_config_text)
        .def("hash", &config_hash)
        .def(py::self == py::self)
        .def("__repr__", [](const ScenarioConfig& c) { return "ScenarioConfig(hash=" + config_hash(c) + ")"; });

    m.def("load_config", [](const std::string& path) { return load_config(path); }, "path"_a);
    m.def(
        "parse_config",
        [](const std::string& text) {
            std::istringstream in(text);
            return parse_config(in);
        },
        "text"_a);
    m.def("config_fields", [] {
        std::vector<py::tuple> out;
        for (const auto& f : config_fields()) out.push_back(py::make_tuple(f.key, f.unit, f.description));
        return out;
    });

    py::class_<Deployment>(m, "Deployment")
        .def_property_readonly("bs_positions",
                               [](const Deployment& d) {
                                   std::vector<std::pair<double, double>> out;
                                   for (const Point& p : d.bs_positions) out.emplace_back(p.x, p.y);
                                   return out;
                               })
        .def_property_readonly("mt_positions",
                               [](const Deployment& d) {
                                   std::vector<std::pair<double, double>> out;
                                   for (const Point& p : d.mt_positions) out.emplace_back(p.x, p.y);
                                   return out;
                               })
        .def_property_readonly("bs_states",
                               [](const Deployment& d) {
                                   std::vector<std::string> out;
                                   for (BsState s : d.bs_states) out.emplace_back(to_string(s));
                                   return out;
                               })
        .def_readonly("bs_load", &Deployment::bs_load);

    m.def(
        "generate_deployment",
        [](const ScenarioConfig& cfg, std::uint64_t trial, const std::string& label, std::size_t extra_mts) {
            RandomStream stream(cfg.seed, label, trial);
            return generate_deployment(cfg, stream, extra_mts);
        },
        "cfg"_a, "trial"_a = 0, "label"_a = "coverage", "extra_mts"_a = 0);
    m.def("nearest_candidates", &nearest_candidates, "deployment"_a, "mt"_a, "k"_a);

    m.def("path_loss", &path_loss, "distance_m"_a, "cfg"_a);
    m.def("spectral_efficiency", &spectral_efficiency, "sinr"_a);
    m.def("db_to_linear", &db_to_linear, "db"_a);
    m.def("linear_to_db", &linear_to_db, "linear"_a);

    py::class_<CoverageCurve>(m, "CoverageCurve")
        .def_readonly("thresholds_db", &CoverageCurve::thresholds_db)
        .def_readonly("cellular_prob", &CoverageCurve::cellular_prob)
        .def_readonly("cellular_ci95", &CoverageCurve::cellular_ci95)
        .def_readonly("cellless_prob", &CoverageCurve::cellless_prob)
        .def_readonly("cellless_ci95", &CoverageCurve::cellless_ci95)
        .def_readonly("n_trials", &CoverageCurve::n_trials);
    py::class_<BsEnergyCurve>(m, "BsEnergyCurve")
        .def_readonly("sleeping_counts", &BsEnergyCurve::sleeping_counts)
        .def_readonly("group_sizes", &BsEnergyCurve::group_sizes)
        .def_readonly("saving", &BsEnergyCurve::saving)
        .def_readonly("ci95", &BsEnergyCurve::ci95)
        .def_readonly("n_users", &BsEnergyCurve::n_users)
        .def_readonly("n_trials", &BsEnergyCurve::n_trials);
    py::class_<MtEnergyCurve>(m, "MtEnergyCurve")
        .def_readonly("group_sizes", &MtEnergyCurve::group_sizes)
        .def_readonly("saving", &MtEnergyCurve::saving)
        .def_readonly("ci95", &MtEnergyCurve::ci95)
        .def_readonly("n_trials", &MtEnergyCurve::n_trials);

    m.def(
        "run_coverage",
        [](const ScenarioConfig& cfg, const std::vector<double>& thresholds_db, std::size_t workers,
           bool fixed_deployment, const std::string& cellular) {
            RunOptions options = run_options(workers);
            options.fixed_deployment = fixed_deployment;
            if (cellular == "nearest") options.cellular = CellularAssociation::NearestAny;
            else if (cellular != "nearest-idle") throw ConfigError("cellular", "expected nearest-idle or nearest");
            py::gil_scoped_release release;
            return run_coverage(cfg, thresholds_db, options);
        },
        "cfg"_a, "thresholds_db"_a, "workers"_a = 1, "fixed_deployment"_a = false, "cellular"_a = "nearest-idle");
    m.def(
        "run_bs_energy",
        [](const ScenarioConfig& cfg, const std::vector<std::size_t>& sleeping_counts,
           const std::vector<std::size_t>& group_sizes, std::size_t n_users, std::size_t workers) {
            py::gil_scoped_release release;
            return run_bs_energy(cfg, sleeping_counts, group_sizes, n_users, run_options(workers));
        },
        "cfg"_a, "sleeping_counts"_a, "group_sizes"_a = std::vector<std::size_t>{2, 3, 4}, "n_users"_a = 10,
        "workers"_a = 1);
    m.def(
        "run_mt_energy",
        [](const ScenarioConfig& cfg, const std::vector<std::size_t>& group_sizes, std::size_t workers) {
            py::gil_scoped_release release;
            return run_mt_energy(cfg, group_sizes, run_options(workers));
        },
        "cfg"_a, "group_sizes"_a = std::vector<std::size_t>{1, 2, 3, 4, 5}, "workers"_a = 1);
    m.def("bs_energy_closed_form", &bs_energy_closed_form, "cfg"_a, "sleeping"_a, "group_size"_a, "n_users"_a);

    m.def(
        "to_csv",
        [](const ScenarioConfig& cfg, const CoverageCurve& c) { return csv_for("coverage", cfg, c); }, "cfg"_a,
        "curve"_a);
    m.def(
        "to_csv",
        [](const ScenarioConfig& cfg, const BsEnergyCurve& c) { return csv_for("bs-energy", cfg, c); }, "cfg"_a,
        "curve"_a);
    m.def(
        "to_csv",
        [](const ScenarioConfig& cfg, const MtEnergyCurve& c) { return csv_for("mt-energy", cfg, c); }, "cfg"_a,
        "curve"_a);
    m.def("config_hash", &config_hash, "cfg"_a);

    m.def(
        "run_validation",
        [](const ScenarioConfig& cfg, std::size_t instances, std::size_t workers) {
            std::vector<ValidationCheck> checks;
            {
                py::gil_scoped_release release;
                checks = run_validation(cfg, instances, workers);
            }
            std::vector<py::tuple> out;
            for (const auto& c : checks) out.push_back(py::make_tuple(c.name, c.passed, c.detail));
            return out;
        },
        "cfg"_a, "instances"_a = 1000, "workers"_a = 1);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = run_cli(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        "args"_a, "Run the cellless-sim command line in process; returns (exit_code, stdout, stderr).");
}
