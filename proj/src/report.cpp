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

#include "cellless/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cellless/config_io.hpp"
#include "cellless/errors.hpp"

namespace cellless {

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

std::string git_blob_sha1(std::string_view text) {
    std::string blob = "blob " + std::to_string(text.size());
    blob.push_back('\0');
    blob.append(text);

    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(blob.data(), blob.size(), digest, &length, EVP_sha1(), nullptr) != 1) {
        throw Error("SHA-1 digest failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string hex;
    hex.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        hex.push_back(kHex[digest[i] >> 4]);
        hex.push_back(kHex[digest[i] & 0xF]);
    }
    return hex;
}

std::string config_hash(const ScenarioConfig& cfg) { return git_blob_sha1(canonical_config_text(cfg)); }

ExperimentReport make_report(std::string experiment, const ScenarioConfig& cfg, CurvePayload payload,
                             double wall_seconds) {
    return {std::move(experiment), cfg, config_hash(cfg), std::move(payload), wall_seconds, cfg.seed};
}

namespace {

std::size_t payload_trials(const CurvePayload& payload) {
    return std::visit([](const auto& curve) { return curve.n_trials; }, payload);
}

void write_row(std::ostream& out, std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& cell : cells) {
        if (!first) out << ',';
        out << cell;
        first = false;
    }
    out << '\n';
}

void write_rows(std::ostream& out, const CoverageCurve& c) {
    write_row(out, {"threshold_db", "cellular", "cellular_ci95", "cellless", "cellless_ci95"});
    for (std::size_t i = 0; i < c.thresholds_db.size(); ++i) {
        write_row(out, {format_number(c.thresholds_db[i]), format_number(c.cellular_prob[i]),
                        format_number(c.cellular_ci95[i]), format_number(c.cellless_prob[i]),
                        format_number(c.cellless_ci95[i])});
    }
}

void write_rows(std::ostream& out, const BsEnergyCurve& c) {
    out << "sleeping_count";
    for (std::size_t k : c.group_sizes) out << ",saving_k" << k << ",saving_k" << k << "_ci95";
    out << '\n';
    for (std::size_t si = 0; si < c.sleeping_counts.size(); ++si) {
        out << c.sleeping_counts[si];
        for (std::size_t ki = 0; ki < c.group_sizes.size(); ++ki) {
            out << ',' << format_number(c.saving[ki][si]) << ',' << format_number(c.ci95[ki][si]);
        }
        out << '\n';
    }
}

void write_rows(std::ostream& out, const MtEnergyCurve& c) {
    write_row(out, {"group_size", "saving", "saving_ci95"});
    for (std::size_t i = 0; i < c.group_sizes.size(); ++i) {
        write_row(out, {std::to_string(c.group_sizes[i]), format_number(c.saving[i]), format_number(c.ci95[i])});
    }
}

} // namespace

void emit_csv(const ExperimentReport& report, std::ostream& out) {
    out << "# experiment=" << report.experiment << '\n'
        << "# config_hash=" << report.config_hash << '\n'
        << "# seed=" << report.seed << '\n'
        << "# n_trials=" << payload_trials(report.payload) << '\n';
    std::visit([&](const auto& curve) { write_rows(out, curve); }, report.payload);
}

void emit_csv(const ExperimentReport& report, const std::filesystem::path& destination) {
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot open " + destination.string() + " for writing");
    emit_csv(report, out);
    out.flush();
    if (!out) throw IoFailure("write to " + destination.string() + " failed");
}

std::string to_csv(const ExperimentReport& report) {
    std::ostringstream out;
    emit_csv(report, out);
    return out.str();
}

namespace {

nlohmann::json curve_json(const CoverageCurve& c) {
    nlohmann::json points = nlohmann::json::array();
    for (std::size_t i = 0; i < c.thresholds_db.size(); ++i) {
        points.push_back({{"threshold_db", c.thresholds_db[i]},
                          {"cellular", c.cellular_prob[i]},
                          {"cellular_ci95", c.cellular_ci95[i]},
                          {"cellless", c.cellless_prob[i]},
                          {"cellless_ci95", c.cellless_ci95[i]}});
    }
    return {{"n_trials", c.n_trials}, {"points", points}};
}

nlohmann::json curve_json(const BsEnergyCurve& c) {
    nlohmann::json points = nlohmann::json::array();
    for (std::size_t si = 0; si < c.sleeping_counts.size(); ++si) {
        nlohmann::json by_k = nlohmann::json::object();
        for (std::size_t ki = 0; ki < c.group_sizes.size(); ++ki) {
            by_k[std::to_string(c.group_sizes[ki])] = {{"saving", c.saving[ki][si]}, {"ci95", c.ci95[ki][si]}};
        }
        points.push_back({{"sleeping_count", c.sleeping_counts[si]}, {"group_sizes", by_k}});
    }
    return {{"n_trials", c.n_trials}, {"n_users", c.n_users}, {"group_sizes", c.group_sizes}, {"points", points}};
}

nlohmann::json curve_json(const MtEnergyCurve& c) {
    nlohmann::json points = nlohmann::json::array();
    for (std::size_t i = 0; i < c.group_sizes.size(); ++i) {
        points.push_back({{"group_size", c.group_sizes[i]}, {"saving", c.saving[i]}, {"saving_ci95", c.ci95[i]}});
    }
    return {{"n_trials", c.n_trials}, {"points", points}};
}

} // namespace

nlohmann::json to_json(const ExperimentReport& report) {
    const ScenarioConfig& c = report.config;
    const StatePower& p = c.state_power_mw;
    const nlohmann::json config{{"area_side_m", c.area_side_m},
                                {"n_bs", c.n_bs},
                                {"n_busy_bs", c.n_busy_bs},
                                {"n_candidates", c.n_candidates},
                                {"max_group_size", c.max_group_size},
                                {"state_power_mw", {p.sleeping_mw, p.listening_mw, p.ready_mw, p.transferring_mw}},
                                {"bs_tx_power_mw", c.bs_tx_power_mw},
                                {"mt_tx_power_mw", c.mt_tx_power_mw},
                                {"path_loss_exponent", c.path_loss_exponent},
                                {"reference_distance_m", c.reference_distance_m},
                                {"noise_power_mw", c.noise_power_mw},
                                {"min_distance_m", c.min_distance_m},
                                {"n_trials", c.n_trials},
                                {"seed", c.seed}};
    return {{"experiment", report.experiment},
            {"config", config},
            {"config_hash", report.config_hash},
            {"seed", report.seed},
            {"wall_seconds", report.wall_seconds},
            {"curve", std::visit([](const auto& c) { return curve_json(c); }, report.payload)}};
}

// ---- summary --------------------------------------------------------------

namespace {

std::string join_values(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += ", ";
        out += items[i];
    }
    return out;
}

std::string verdict(const std::vector<std::string>& offenders, std::string_view what) {
    return offenders.empty() ? "PASS" : "FAIL at " + std::string(what) + " = " + join_values(offenders);
}

double max_of(const std::vector<double>& v) {
    return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

std::string summary_of(const ExperimentReport& r, const CoverageCurve& c) {
    if (c.thresholds_db.empty()) return r.experiment + ": no data";
    std::vector<std::string> dominance_fail, monotone_fail;
    for (std::size_t i = 0; i < c.thresholds_db.size(); ++i) {
        const double slack = 2.0 * std::max(c.cellular_ci95[i], c.cellless_ci95[i]);
        if (c.cellless_prob[i] < c.cellular_prob[i] - slack) dominance_fail.push_back(format_number(c.thresholds_db[i]));
        if (i > 0 && (c.cellular_prob[i] > c.cellular_prob[i - 1] || c.cellless_prob[i] > c.cellless_prob[i - 1])) {
            monotone_fail.push_back(format_number(c.thresholds_db[i]));
        }
    }
    std::ostringstream s;
    s << r.experiment << " over " << c.n_trials << " trials, thresholds " << format_number(c.thresholds_db.front())
      << " to " << format_number(c.thresholds_db.back()) << " dB: cell-less ≥ cellular at all thresholds: "
      << verdict(dominance_fail, "threshold_db") << "; coverage non-increasing in threshold: "
      << verdict(monotone_fail, "threshold_db") << "; max ci95 = "
      << format_number(std::max(max_of(c.cellular_ci95), max_of(c.cellless_ci95))) << ".";
    return s.str();
}

std::string summary_of(const ExperimentReport& r, const BsEnergyCurve& c) {
    if (c.sleeping_counts.empty() || c.group_sizes.empty()) return r.experiment + ": no data";
    std::vector<std::string> linear_fail, increasing_fail, order_fail;
    double max_ci = 0.0;
    for (std::size_t ki = 0; ki < c.group_sizes.size(); ++ki) {
        max_ci = std::max(max_ci, max_of(c.ci95[ki]));
        for (std::size_t si = 0; si < c.sleeping_counts.size(); ++si) {
            const double expected = bs_energy_closed_form(r.config, c.sleeping_counts[si], c.group_sizes[ki], c.n_users);
            if (std::abs(c.saving[ki][si] - expected) > 1e-12) {
                linear_fail.push_back("k" + std::to_string(c.group_sizes[ki]) + "/s" +
                                      std::to_string(c.sleeping_counts[si]));
            }
            if (si > 0 && !(c.saving[ki][si] > c.saving[ki][si - 1])) {
                increasing_fail.push_back("k" + std::to_string(c.group_sizes[ki]) + "/s" +
                                          std::to_string(c.sleeping_counts[si]));
            }
        }
    }
    for (std::size_t si = 0; si < c.sleeping_counts.size(); ++si) {
        const std::size_t s = c.sleeping_counts[si];
        for (std::size_t ki = 1; ki < c.group_sizes.size(); ++ki) {
            const double smaller_k = c.saving[ki - 1][si];
            const double larger_k = c.saving[ki][si];
            const bool ok = s == 0 ? smaller_k >= larger_k : smaller_k > larger_k;
            if (!ok) {
                order_fail.push_back(std::to_string(s));
                break;
            }
        }
    }
    std::string ordering = "ordering ";
    for (std::size_t ki = 0; ki < c.group_sizes.size(); ++ki) {
        if (ki > 0) ordering += "≥";
        ordering += "k=" + std::to_string(c.group_sizes[ki]);
    }
    std::ostringstream s;
    s << r.experiment << " over " << c.n_trials << " trials, " << c.n_users << " users: saving linear in s: "
      << verdict(linear_fail, "k/s") << "; saving increasing in s: " << verdict(increasing_fail, "k/s") << "; "
      << ordering << ": " << verdict(order_fail, "s") << "; max ci95 = " << format_number(max_ci) << ".";
    return s.str();
}

std::string summary_of(const ExperimentReport& r, const MtEnergyCurve& c) {
    if (c.group_sizes.empty()) return r.experiment + ": no data";
    std::vector<std::string> monotone_fail;
    for (std::size_t i = 1; i < c.group_sizes.size(); ++i) {
        if (c.saving[i] < c.saving[i - 1]) monotone_fail.push_back(std::to_string(c.group_sizes[i]));
    }
    std::ostringstream s;
    s << r.experiment << " over " << c.n_trials << " trials: ";
    if (c.group_sizes.front() == 1) {
        s << "saving zero at N=1: " << (c.saving.front() == 0.0 ? "PASS" : "FAIL") << "; ";
    }
    s << "saving non-decreasing in N: " << verdict(monotone_fail, "N") << "; saving at N="
      << c.group_sizes.back() << " = " << format_number(c.saving.back()) << "; max ci95 = "
      << format_number(max_of(c.ci95)) << ".";
    return s.str();
}

} // namespace

std::string summarize(const ExperimentReport& report) {
    return std::visit([&](const auto& curve) { return summary_of(report, curve); }, report.payload);
}

} // namespace cellless
