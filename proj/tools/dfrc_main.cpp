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

// Experiment runner. Exit codes: 0 ok, 2 config error, 3 solver failure, 4 partial results.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dfrc/harness.hpp"
#include "dfrc/scenario.hpp"

namespace
{
    constexpr int exit_config = 2;
    constexpr int exit_solver = 3;

    struct CommonArgs
    {
        std::string config;
        std::string out = "out";
        int seeds = 1;
        std::uint64_t seed_base = 0;
        bool seed_base_set = false;
        std::vector<std::string> sweeps;
        int grid_points = 721;
        int threads = 0;
    };

    void add_common(CLI::App *cmd, CommonArgs &a, int default_seeds)
    {
        a.seeds = default_seeds;
        cmd->add_option("--config", a.config, "scenario JSON (defaults to the built-in default scenario)");
        cmd->add_option("--out", a.out, "output directory")->capture_default_str();
        cmd->add_option("--seeds", a.seeds, "number of seeded trials")->capture_default_str()->check(CLI::PositiveNumber);
        cmd->add_option_function<std::uint64_t>(
            "--seed-base", [&a](std::uint64_t v)
            { a.seed_base = v; a.seed_base_set = true; },
            "base seed; trial t uses base XOR t (defaults to the config seed)");
        cmd->add_option("--sweep", a.sweeps, "KEY=V1,V2,... (repeatable)");
        cmd->add_option("--grid-points", a.grid_points, "beampattern grid size over [-90, 90] degrees")
            ->capture_default_str();
        cmd->add_option("--threads", a.threads, "worker threads, 0 for all cores")->capture_default_str();
    }

    dfrc::ExperimentSpec make_spec(const CommonArgs &a, dfrc::ExperimentKind kind)
    {
        dfrc::ExperimentSpec spec;
        spec.kind = kind;
        if (!a.config.empty())
        {
            spec.base = dfrc::load_config(a.config);
            spec.base_path = a.config;
        }
        spec.output_dir = a.out;
        spec.n_seeds = a.seeds;
        spec.seed_base = a.seed_base_set ? a.seed_base : spec.base.seed;
        for (const auto &s : a.sweeps)
            spec.sweeps.push_back(dfrc::parse_sweep(s));
        spec.grid_points = a.grid_points;
        spec.threads = a.threads;
        return spec;
    }

    int execute(const dfrc::ExperimentSpec &spec)
    {
        auto result = dfrc::run_experiment(spec);
        dfrc::write_artifacts(spec, result);
        int code = result.exit_code();
        std::fprintf(stderr, "%s: %d runs, %d failed, %.1f s, artifacts in %s\n", dfrc::to_string(spec.kind).c_str(),
                     result.runs, result.failed, result.total_wall, spec.output_dir.c_str());
        return code;
    }

    void report(const dfrc::ConfigError &e)
    {
        std::cerr << "config error: " << e.what();
        if (!e.field.empty())
            std::cerr << " [field " << e.field << "]";
        if (e.line > 0)
            std::cerr << " [line " << e.line << "]";
        std::cerr << "\n";
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Worst-case SCNR beamforming experiments"};
    app.require_subcommand(1);

    CommonArgs run_args, bp_args, audit_args;
    std::string kind_name;
    auto *run = app.add_subcommand("run", "run one experiment kind");
    add_common(run, run_args, 1);
    run->add_option("--kind", kind_name,
                    "scnr_vs_gamma, convergence, i_sweep, spread_sweep, beampattern, dedicated_compare, "
                    "baseline_audit, sensitivity")
        ->required();

    std::string source = "all";
    auto *bp = app.add_subcommand("beampattern", "receive beampatterns of the proposed and dedicated combiners");
    add_common(bp, bp_args, 1);
    bp->add_option("--source", source, "all, proposed or dedicated:i")->capture_default_str();

    int iters = 10;
    auto *audit = app.add_subcommand("baseline-audit", "monotonicity audit of the fixed-covariance baseline");
    add_common(audit, audit_args, 50);
    audit->add_option("--iters", iters, "baseline iterations per seed")->capture_default_str();

    std::string check_path;
    auto *check = app.add_subcommand("validate-config", "parse and validate a scenario file");
    check->add_option("--config", check_path, "scenario JSON")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    try
    {
        if (*check)
        {
            auto cfg = dfrc::load_config(check_path);
            std::printf("ok %016llx\n", static_cast<unsigned long long>(dfrc::config_hash(cfg)));
            return 0;
        }
        if (*run)
            return execute(make_spec(run_args, dfrc::parse_kind(kind_name)));
        if (*bp)
        {
            auto spec = make_spec(bp_args, dfrc::ExperimentKind::beampattern);
            spec.pattern_source = source;
            return execute(spec);
        }
        if (*audit)
        {
            auto spec = make_spec(audit_args, dfrc::ExperimentKind::baseline_audit);
            spec.baseline_iters = iters;
            return execute(spec);
        }
    }
    catch (const dfrc::ConfigError &e)
    {
        report(e);
        return exit_config;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_solver;
    }
    return 0;
}
