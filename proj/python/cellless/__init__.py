# SPDX-License-Identifier: Apache-2.0
#
# cellless: Monte Carlo simulator for converged cell-less radio access networks
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------
"""Python bindings for the cellless Monte Carlo simulator."""

from ._cellless import (
    BsEnergyCurve,
    CelllessError,
    ConfigError,
    CoverageCurve,
    Deployment,
    MtEnergyCurve,
    ScenarioConfig,
    bs_energy_closed_form,
    config_fields,
    config_hash,
    db_to_linear,
    generate_deployment,
    linear_to_db,
    load_config,
    nearest_candidates,
    parse_config,
    path_loss,
    run_bs_energy,
    run_cli,
    run_coverage,
    run_mt_energy,
    run_validation,
    spectral_efficiency,
    to_csv,
)

__all__ = [
    "BsEnergyCurve",
    "CelllessError",
    "ConfigError",
    "CoverageCurve",
    "Deployment",
    "MtEnergyCurve",
    "ScenarioConfig",
    "bs_energy_closed_form",
    "config_fields",
    "config_hash",
    "db_to_linear",
    "generate_deployment",
    "linear_to_db",
    "load_config",
    "nearest_candidates",
    "parse_config",
    "path_loss",
    "run_bs_energy",
    "run_cli",
    "run_coverage",
    "run_mt_energy",
    "run_validation",
    "spectral_efficiency",
    "to_csv",
]
