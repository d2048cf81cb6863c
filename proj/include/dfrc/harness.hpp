// SPDX-License-Identifier: Apache-2.0
//
// robust-dfrc: worst-case radar beamforming for dual-function radar-communication
// Copyright (C) 2026 The robust-dfrc contributors
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

#ifndef DFRC_HARNESS_H
#define DFRC_HARNESS_H

#include <cstdint>
#include <string>
#include <vector>

#include "dfrc/scenario.hpp"

namespace dfrc
{
    enum class ExperimentKind
    {
        scnr_vs_gamma,
        convergence,
        i_sweep,
        spread_sweep,
        beampattern,
        dedicated_compare,
        baseline_audit,
        sensitivity
    };
    ExperimentKind parse_kind(const std::string &name); // throws ConfigError
    std::string to_string(ExperimentKind kind);

    // One swept parameter. Values stay as text because some keys take labels (spread=G1).
    struct SweepSpec
    {
        std::string key;
        std::vector<std::string> values;
    };
    SweepSpec parse_sweep(const std::string &arg); // KEY=V1,V2,...

    // Keys accepted by apply_override and --sweep:
    //   gamma_db, n, n_tx, n_rx, p_max_dbm, i_count, spread (G1, G2 or LO:HI in degrees),
    //   penalty_eta, penalty_nu, inner_S, outer_d_max, epsilon, kkt_tol, dinkelbach_tol,
    //   iters (baseline_audit only)
    void apply_override(ScenarioConfig &config, const std::string &key, const std::string &value);

    struct ExperimentSpec
    {
        ExperimentKind kind = ExperimentKind::scnr_vs_gamma;
        ScenarioConfig base = default_scenario();
        std::string base_path; // informational, recorded in the manifest
        std::vector<SweepSpec> sweeps;
        int n_seeds = 1;
        std::uint64_t seed_base = 0;
        std::string output_dir = "out";
        int grid_points = 721;
        int threads = 0;            // 0 picks the hardware concurrency
        double flag_margin_db = 3.0; // dedicated_compare report threshold
        int baseline_iters = 10;
        std::string pattern_source = "all"; // beampattern rows: all, proposed or dedicated:i

        void validate() const;
    };

    // Sweeps actually run: the kind's defaults, with user sweeps replacing keys they name
    std::vector<SweepSpec> effective_sweeps(const ExperimentSpec &spec);

    struct CsvTable
    {
        std::string name; // file name
        std::vector<std::string> header;
        std::vector<std::vector<std::string>> rows;

        std::string render() const; // LF line endings
    };

    // Shortest text that round-trips: 17 significant digits, "nan"/"inf" spelled out
    std::string format_real(double v);

    struct ExperimentResult
    {
        std::vector<CsvTable> tables;
        int runs = 0;
        int failed = 0;
        bool config_error = false;
        std::vector<double> wall_times; // per run, seconds
        double total_wall = 0.0;

        int exit_code() const; // 0 ok, 2 config error, 3 solver failure, 4 partial results
    };

    ExperimentResult run_experiment(const ExperimentSpec &spec);

    // Writes every table plus manifest.json into spec.output_dir
    void write_artifacts(const ExperimentSpec &spec, const ExperimentResult &result);
    std::string manifest_json(const ExperimentSpec &spec, const ExperimentResult &result);
}

#endif
