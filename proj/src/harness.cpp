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

#include "dfrc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dfrc/alternating.hpp"
#include "dfrc/receive_opt.hpp"

namespace dfrc
{
    namespace
    {
        const std::vector<std::pair<ExperimentKind, std::string>> kind_names = {
            {ExperimentKind::scnr_vs_gamma, "scnr_vs_gamma"},
            {ExperimentKind::convergence, "convergence"},
            {ExperimentKind::i_sweep, "i_sweep"},
            {ExperimentKind::spread_sweep, "spread_sweep"},
            {ExperimentKind::beampattern, "beampattern"},
            {ExperimentKind::dedicated_compare, "dedicated_compare"},
            {ExperimentKind::baseline_audit, "baseline_audit"},
            {ExperimentKind::sensitivity, "sensitivity"},
        };

        double parse_number(const std::string &key, const std::string &text)
        {
            try
            {
                size_t used = 0;
                double v = std::stod(text, &used);
                if (used != text.size())
                    throw std::invalid_argument(text);
                return v;
            }
            catch (const std::exception &)
            {
                throw ConfigError("sweep value for " + key + " is not a number: '" + text + "'", key);
            }
        }

        int parse_count(const std::string &key, const std::string &text)
        {
            double v = parse_number(key, text);
            if (v != std::floor(v) || v < 1 || v > 1e6)
                throw ConfigError("sweep value for " + key + " must be a positive integer: '" + text + "'", key);
            return int(v);
        }

        std::vector<Angle> equispaced(double lo, double hi, int count)
        {
            std::vector<Angle> out;
            for (int i = 0; i < count; ++i)
                out.push_back(make_angle(count == 1 ? lo : lo + (hi - lo) * i / double(count - 1)));
            return out;
        }

        std::pair<double, double> angle_span(const ScenarioConfig &c)
        {
            double lo = INFINITY, hi = -INFINITY;
            for (const auto &a : c.target_angles)
            {
                lo = std::min(lo, a.rad);
                hi = std::max(hi, a.rad);
            }
            return {lo, hi};
        }

        void set_candidates(ScenarioConfig &c, std::vector<Angle> angles)
        {
            if (c.target_gain.size() > 1)
                c.target_gain.assign(1, c.target_gain[0]);
            c.target_angles = std::move(angles);
        }

        double deg(double rad) { return rad * 180.0 / pi; }
        double rad(double deg) { return deg * pi / 180.0; }
        double db(double lin) { return 10.0 * std::log10(lin); }

        bool is_failure(SolveStatus s)
        {
            return s != SolveStatus::converged && s != SolveStatus::max_iters;
        }

        // chi(d) >= chi(d-1) - 1e-6 (1 + |chi(d-1)|)
        int monotonicity_violations(const std::vector<double> &trace)
        {
            int v = 0;
            for (size_t d = 1; d < trace.size(); ++d)
                if (trace[d] < trace[d - 1] - 1e-6 * (1.0 + std::abs(trace[d - 1])))
                    ++v;
            return v;
        }

        using Row = std::vector<std::string>;

        struct JobOutput
        {
            std::vector<std::vector<Row>> rows; // per table
            bool failed = false;
            bool config_error = false;
            double wall = 0.0;
        };

        struct Job
        {
            std::vector<std::pair<std::string, std::string>> point;
            int trial = 0;
        };

        std::vector<std::vector<std::pair<std::string, std::string>>> sweep_points(const std::vector<SweepSpec> &sweeps)
        {
            std::vector<std::vector<std::pair<std::string, std::string>>> pts(1);
            for (const auto &s : sweeps)
            {
                std::vector<std::vector<std::pair<std::string, std::string>>> next;
                for (const auto &p : pts)
                    for (const auto &v : s.values)
                    {
                        auto q = p;
                        q.emplace_back(s.key, v);
                        next.push_back(std::move(q));
                    }
                pts = std::move(next);
            }
            return pts;
        }

        std::vector<CsvTable> make_tables(ExperimentKind kind, const std::vector<SweepSpec> &sweeps)
        {
            Row lead;
            for (const auto &s : sweeps)
                lead.push_back(s.key);
            lead.push_back("seed");
            auto table = [&](const std::string &name, const Row &cols)
            {
                CsvTable t;
                t.name = name;
                t.header = lead;
                t.header.insert(t.header.end(), cols.begin(), cols.end());
                return t;
            };
            const Row summary = {"scnr_db", "scnr_linear", "chi", "iters", "min_sinr_margin_db", "power_error", "status"};
            switch (kind)
            {
            case ExperimentKind::scnr_vs_gamma:
            case ExperimentKind::i_sweep:
            case ExperimentKind::spread_sweep:
            case ExperimentKind::sensitivity:
                return {table(to_string(kind) + ".csv", summary)};
            case ExperimentKind::convergence:
                return {table("convergence.csv", {"iter", "chi", "scnr_db", "status"})};
            case ExperimentKind::beampattern:
                return {table("beampattern.csv", {"source", "angle_deg", "gain_db", "status"})};
            case ExperimentKind::dedicated_compare:
                return {table("dedicated_compare.csv", {"candidate", "angle_deg", "proposed_gain_db", "dedicated_gain_db",
                                                        "dedicated_peak_db", "gap_db", "flagged", "status"})};
            case ExperimentKind::baseline_audit:
                return {table("baseline_audit.csv", {"scheme", "iter", "value", "scnr_db", "rank_warning", "status"}),
                        table("baseline_summary.csv", {"baseline_violations", "baseline_monotone", "baseline_max_drop_rel", "proposed_violations",
                                                       "proposed_monotone", "status"})};
            }
            return {};
        }

        const std::string nan_text = "nan";

        Row summary_row(const Solution &sol, const ChannelSet &ch, const ScenarioConfig &c)
        {
            if (sol.chi_trace.empty())
                return {nan_text, nan_text, nan_text, "0", nan_text, nan_text, to_string(sol.status)};
            double margin = INFINITY;
            auto g = sinr_all(sol.u_star, ch, c);
            for (int k = 0; k < c.n_users(); ++k)
                margin = std::min(margin, db(g[size_t(k)]) - c.users[size_t(k)].sinr_threshold_db);
            double perr = (sol.u_star.power() - c.p_max()) / c.p_max();
            double s = sol.scnr_trace.back();
            return {format_real(db(s)), format_real(s), format_real(sol.chi_trace.back()), std::to_string(sol.outer_iters),
                    format_real(margin), format_real(perr), to_string(sol.status)};
        }

        std::vector<double> pattern_db(const cvec &w, const ArrayGeometry &g, const std::vector<Angle> &grid)
        {
            auto lin = rx_beampattern(w, g, grid);
            std::vector<double> out;
            for (double v : lin)
                out.push_back(db(v));
            return out;
        }

        // Combiner matched to candidate i alone, for the solver's transmit beamformers
        cvec dedicated_combiner(int i, const StackedBeamformer &u, const ScenarioConfig &c)
        {
            auto inst = build_fractional(u, c);
            return normalize_phase(generalized_eigen_oracle(inst.N[size_t(i)], inst.D).w);
        }

        JobOutput run_job(const ExperimentSpec &spec, const Job &job, size_t n_tables)
        {
            JobOutput out;
            out.rows.resize(n_tables);
            ScenarioConfig c = spec.base;
            int baseline_iters = spec.baseline_iters;
            Row lead;
            for (const auto &[k, v] : job.point)
                lead.push_back(v);
            const std::uint64_t seed = trial_seed(spec.seed_base, std::uint64_t(job.trial));
            lead.push_back(std::to_string(seed));
            auto emit = [&](size_t table, const Row &cols)
            {
                Row r = lead;
                r.insert(r.end(), cols.begin(), cols.end());
                out.rows[table].push_back(std::move(r));
            };
            // width of the kind-specific part, for failure rows
            auto fail_row = [&](size_t table, size_t width, const std::string &status)
            {
                Row cols(width, nan_text);
                cols.back() = status;
                emit(table, cols);
            };
            const auto tables = make_tables(spec.kind, effective_sweeps(spec));
            auto width = [&](size_t t) { return tables[t].header.size() - lead.size(); };

            try
            {
                for (const auto &[k, v] : job.point)
                {
                    if (k == "iters")
                        baseline_iters = parse_count(k, v);
                    else
                        apply_override(c, k, v);
                }
                c.seed = seed;
                c.validate();
            }
            catch (const ConfigError &e)
            {
                out.failed = out.config_error = true;
                for (size_t t = 0; t < n_tables; ++t)
                    fail_row(t, width(t), "config-error");
                return out;
            }

            const auto ch = generate_channels(c);
            try
            {
                switch (spec.kind)
                {
                case ExperimentKind::scnr_vs_gamma:
                case ExperimentKind::i_sweep:
                case ExperimentKind::spread_sweep:
                case ExperimentKind::sensitivity:
                {
                    Solution sol = run_algorithm1(c, ch);
                    out.failed = is_failure(sol.status);
                    emit(0, summary_row(sol, ch, c));
                    break;
                }
                case ExperimentKind::convergence:
                {
                    Solution sol = run_algorithm1(c, ch);
                    out.failed = is_failure(sol.status);
                    if (sol.chi_trace.empty())
                        fail_row(0, width(0), to_string(sol.status));
                    for (size_t d = 0; d < sol.chi_trace.size(); ++d)
                        emit(0, {std::to_string(d), format_real(sol.chi_trace[d]), format_real(db(sol.scnr_trace[d])),
                                 to_string(sol.status)});
                    break;
                }
                case ExperimentKind::beampattern:
                {
                    Solution sol = run_algorithm1(c, ch);
                    out.failed = is_failure(sol.status);
                    if (sol.chi_trace.empty())
                    {
                        fail_row(0, width(0), to_string(sol.status));
                        break;
                    }
                    auto grid = angle_grid(-pi / 2, pi / 2, spec.grid_points);
                    auto emit_pattern = [&](const std::string &source, const cvec &w)
                    {
                        if (spec.pattern_source != "all" && spec.pattern_source != source)
                            return;
                        auto g = pattern_db(w, c.geometry, grid);
                        for (size_t p = 0; p < grid.size(); ++p)
                            emit(0, {source, format_real(deg(grid[p].rad)), format_real(g[p]), to_string(sol.status)});
                    };
                    emit_pattern("proposed", sol.w_star);
                    for (int i = 0; i < c.n_targets(); ++i)
                        emit_pattern("dedicated:" + std::to_string(i + 1), dedicated_combiner(i, sol.u_star, c));
                    break;
                }
                case ExperimentKind::dedicated_compare:
                {
                    Solution sol = run_algorithm1(c, ch);
                    out.failed = is_failure(sol.status);
                    if (sol.chi_trace.empty())
                    {
                        fail_row(0, width(0), to_string(sol.status));
                        break;
                    }
                    auto grid = angle_grid(-pi / 2, pi / 2, spec.grid_points);
                    for (int i = 0; i < c.n_targets(); ++i)
                    {
                        const Angle a = c.target_angles[size_t(i)];
                        cvec wd = dedicated_combiner(i, sol.u_star, c);
                        double prop = pattern_db(sol.w_star, c.geometry, {a})[0];
                        double ded = pattern_db(wd, c.geometry, {a})[0];
                        auto pat = pattern_db(wd, c.geometry, grid);
                        double peak = std::max(ded, *std::max_element(pat.begin(), pat.end()));
                        double gap = ded - prop;
                        emit(0, {std::to_string(i + 1), format_real(deg(a.rad)), format_real(prop), format_real(ded),
                                 format_real(peak), format_real(gap), gap > spec.flag_margin_db ? "1" : "0",
                                 to_string(sol.status)});
                    }
                    break;
                }
                case ExperimentKind::baseline_audit:
                {
                    std::string bstatus = "ok";
                    int bviol = -1;
                    double bdrop = NAN;
                    try
                    {
                        auto tr = run_baseline_fixed_G(c, ch, c.target_angles[0], baseline_iters);
                        bviol = tr.violations;
                        bdrop = tr.max_relative_drop;
                        for (size_t m = 0; m < tr.f_values.size(); ++m)
                            emit(0, {"baseline", std::to_string(m + 1), format_real(tr.f_values[m]), format_real(db(tr.scnr[m])),
                                     tr.rank_warning[m] ? "1" : "0", "ok"});
                    }
                    catch (const InfeasibleError &)
                    {
                        bstatus = "infeasible";
                    }
                    catch (const std::runtime_error &)
                    {
                        bstatus = "solver-error";
                    }
                    if (bviol < 0)
                    {
                        out.failed = true;
                        emit(0, {"baseline", "0", nan_text, nan_text, "0", bstatus});
                    }

                    Solution sol = run_algorithm1(c, ch);
                    out.failed = out.failed || is_failure(sol.status);
                    for (size_t d = 0; d < sol.chi_trace.size(); ++d)
                        emit(0, {"proposed", std::to_string(d), format_real(sol.chi_trace[d]), format_real(db(sol.scnr_trace[d])),
                                 "0", to_string(sol.status)});
                    int pviol = monotonicity_violations(sol.chi_trace);
                    std::string status = bviol < 0 ? bstatus : to_string(sol.status);
                    emit(1, {bviol < 0 ? nan_text : std::to_string(bviol), bviol < 0 ? nan_text : (bviol == 0 ? "1" : "0"),
                             format_real(bdrop), std::to_string(pviol), pviol == 0 ? "1" : "0", status});
                    break;
                }
                }
            }
            catch (const std::exception &e)
            {
                out.failed = true;
                for (size_t t = 0; t < n_tables; ++t)
                    if (out.rows[t].empty())
                        fail_row(t, width(t), "solver-error");
            }
            return out;
        }
    }

    ExperimentKind parse_kind(const std::string &name)
    {
        for (const auto &[k, n] : kind_names)
            if (n == name)
                return k;
        throw ConfigError("unknown experiment kind '" + name + "'", "kind");
    }

    std::string to_string(ExperimentKind kind)
    {
        for (const auto &[k, n] : kind_names)
            if (k == kind)
                return n;
        return "unknown";
    }

    SweepSpec parse_sweep(const std::string &arg)
    {
        auto eq = arg.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 >= arg.size())
            throw ConfigError("sweep must look like KEY=V1,V2,...: '" + arg + "'", "sweep");
        SweepSpec s;
        s.key = arg.substr(0, eq);
        std::stringstream ss(arg.substr(eq + 1));
        std::string item;
        while (std::getline(ss, item, ','))
        {
            if (item.empty())
                throw ConfigError("empty value in sweep '" + arg + "'", s.key);
            s.values.push_back(item);
        }
        // catch unknown keys and malformed values up front
        ScenarioConfig probe = default_scenario();
        for (const auto &v : s.values)
        {
            if (s.key == "iters")
                parse_count(s.key, v);
            else
                apply_override(probe, s.key, v);
        }
        return s;
    }

    void apply_override(ScenarioConfig &c, const std::string &key, const std::string &value)
    {
        auto num = [&] { return parse_number(key, value); };
        auto count = [&] { return parse_count(key, value); };
        auto &o = c.solver;
        if (key == "gamma_db")
        {
            double g = num();
            for (auto &u : c.users)
                u.sinr_threshold_db = g;
        }
        else if (key == "n")
            c.geometry.n_tx = c.geometry.n_rx = count();
        else if (key == "n_tx")
            c.geometry.n_tx = count();
        else if (key == "n_rx")
            c.geometry.n_rx = count();
        else if (key == "p_max_dbm")
            c.p_max_dbm = num();
        else if (key == "i_count")
        {
            int n = count();
            if (c.target_angles.empty())
                throw ConfigError("i_count needs at least one candidate direction to span", key);
            auto [lo, hi] = angle_span(c);
            set_candidates(c, equispaced(lo, hi, n));
        }
        else if (key == "spread")
        {
            double lo, hi;
            if (value == "G1")
                lo = 15.0, hi = 50.0;
            else if (value == "G2")
                lo = 15.0, hi = 40.0;
            else
            {
                auto colon = value.find(':');
                if (colon == std::string::npos)
                    throw ConfigError("spread must be G1, G2 or LO:HI in degrees: '" + value + "'", key);
                lo = parse_number(key, value.substr(0, colon));
                hi = parse_number(key, value.substr(colon + 1));
            }
            if (!(lo <= hi) || !angle_in_range(rad(lo)) || !angle_in_range(rad(hi)))
                throw ConfigError("spread endpoints must be ordered and within [-90, 90] degrees", key);
            int n = std::max(2, c.n_targets());
            set_candidates(c, equispaced(rad(lo), rad(hi), n));
        }
        else if (key == "penalty_eta")
            o.penalty_eta = num();
        else if (key == "penalty_nu")
            o.penalty_nu = num();
        else if (key == "inner_S")
            o.inner_S = count();
        else if (key == "outer_d_max")
            o.outer_d_max = count();
        else if (key == "epsilon")
            o.epsilon = num();
        else if (key == "kkt_tol")
            o.kkt_tol = num();
        else if (key == "dinkelbach_tol")
            o.dinkelbach_tol = num();
        else
            throw ConfigError("unknown sweep key '" + key + "'", key);
    }

    void ExperimentSpec::validate() const
    {
        base.validate();
        if (n_seeds < 1)
            throw ConfigError("at least one seed is required", "seeds");
        if (grid_points < 2)
            throw ConfigError("beampattern grid needs at least two points", "grid_points");
        if (threads < 0)
            throw ConfigError("thread count must be non-negative", "threads");
        if (baseline_iters < 1)
            throw ConfigError("baseline needs at least one iteration", "iters");
        if (pattern_source != "all" && pattern_source != "proposed")
        {
            bool ok = pattern_source.rfind("dedicated:", 0) == 0;
            if (ok)
            {
                int i = parse_count("source", pattern_source.substr(10));
                ok = i <= base.n_targets();
            }
            if (!ok)
                throw ConfigError("pattern source must be all, proposed or dedicated:i with i in 1..I", "source");
        }
        for (const auto &s : sweeps)
        {
            if (s.values.empty())
                throw ConfigError("sweep has no values", s.key);
            if (s.key == "iters" && kind != ExperimentKind::baseline_audit)
                throw ConfigError("iters only applies to baseline_audit", s.key);
        }
    }

    std::vector<SweepSpec> effective_sweeps(const ExperimentSpec &spec)
    {
        std::vector<SweepSpec> out;
        switch (spec.kind)
        {
        case ExperimentKind::scnr_vs_gamma:
            out = {{"gamma_db", {"0", "5", "10", "15", "20"}}, {"n", {"8", "12", "16"}}};
            break;
        case ExperimentKind::convergence:
            out = {{"gamma_db", {"0", "10", "20"}}};
            break;
        case ExperimentKind::i_sweep:
            out = {{"spread", {"G1"}}, {"i_count", {"2", "3", "4"}}};
            break;
        case ExperimentKind::spread_sweep:
            out = {{"spread", {"G1", "G2"}}, {"i_count", {"2", "3", "4"}}};
            break;
        case ExperimentKind::sensitivity:
            out = {{"inner_S", {"1", "3", "5", "10"}}};
            break;
        default:
            break;
        }
        for (const auto &s : spec.sweeps)
        {
            auto it = std::find_if(out.begin(), out.end(), [&](const SweepSpec &o) { return o.key == s.key; });
            if (it != out.end())
                *it = s;
            else
                out.push_back(s);
        }
        return out;
    }

    std::string format_real(double v)
    {
        if (std::isnan(v))
            return "nan";
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

    std::string CsvTable::render() const
    {
        auto join = [](const Row &r)
        {
            std::string s;
            for (size_t i = 0; i < r.size(); ++i)
            {
                if (i)
                    s += ',';
                s += r[i];
            }
            return s + '\n';
        };
        std::string out = join(header);
        for (const auto &r : rows)
            out += join(r);
        return out;
    }

    int ExperimentResult::exit_code() const
    {
        if (config_error && failed == runs)
            return 2;
        if (failed == 0)
            return 0;
        return failed == runs ? 3 : 4;
    }

    ExperimentResult run_experiment(const ExperimentSpec &spec)
    {
        spec.validate();
        const auto sweeps = effective_sweeps(spec);
        for (const auto &s : sweeps)
            if (s.key == "iters" && spec.kind != ExperimentKind::baseline_audit)
                throw ConfigError("iters only applies to baseline_audit", s.key);

        std::vector<Job> jobs;
        for (const auto &p : sweep_points(sweeps))
            for (int t = 0; t < spec.n_seeds; ++t)
                jobs.push_back({p, t});

        ExperimentResult res;
        res.tables = make_tables(spec.kind, sweeps);
        std::vector<JobOutput> outs(jobs.size());

        const auto t0 = std::chrono::steady_clock::now();
        std::atomic<size_t> next{0};
        auto worker = [&]
        {
            for (size_t j = next++; j < jobs.size(); j = next++)
            {
                auto s = std::chrono::steady_clock::now();
                outs[j] = run_job(spec, jobs[j], res.tables.size());
                outs[j].wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - s).count();
            }
        };
        int n_threads = spec.threads > 0 ? spec.threads : int(std::max(1u, std::thread::hardware_concurrency()));
        n_threads = std::min<int>(n_threads, int(std::max<size_t>(1, jobs.size())));
        std::vector<std::thread> pool;
        for (int i = 1; i < n_threads; ++i)
            pool.emplace_back(worker);
        worker();
        for (auto &t : pool)
            t.join();
        res.total_wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        // jobs are ordered by (sweep point, seed), so concatenating keeps artifacts independent
        // of scheduling
        for (const auto &o : outs)
        {
            for (size_t t = 0; t < res.tables.size(); ++t)
                for (const auto &r : o.rows[t])
                    res.tables[t].rows.push_back(r);
            res.wall_times.push_back(o.wall);
            ++res.runs;
            res.failed += o.failed ? 1 : 0;
            res.config_error = res.config_error || o.config_error;
        }
        return res;
    }

    std::string manifest_json(const ExperimentSpec &spec, const ExperimentResult &result)
    {
        using nlohmann::json;
        char hash[20];
        std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(spec.base)));
        json j;
        j["kind"] = to_string(spec.kind);
        j["base_config"] = spec.base_path;
        j["config_hash"] = hash;
        j["config"] = json::parse(dump_config(spec.base));
        json seeds = json::array();
        for (int t = 0; t < spec.n_seeds; ++t)
            seeds.push_back(trial_seed(spec.seed_base, std::uint64_t(t)));
        j["seed_base"] = spec.seed_base;
        j["seeds"] = seeds;
        json sw = json::array();
        for (const auto &s : effective_sweeps(spec))
            sw.push_back({{"key", s.key}, {"values", s.values}});
        j["sweeps"] = sw;
        j["grid_points"] = spec.grid_points;
        j["versions"] = {{"dfrc", "0.1.0"},
                         {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                       std::to_string(EIGEN_MINOR_VERSION)},
                         {"compiler", __VERSION__}};
        json files = json::array();
        for (const auto &t : result.tables)
            files.push_back({{"name", t.name}, {"rows", t.rows.size()}});
        j["files"] = files;
        j["runs"] = result.runs;
        j["failed"] = result.failed;
        j["exit_code"] = result.exit_code();
        j["wall_times_s"] = result.wall_times;
        j["total_wall_s"] = result.total_wall;
        return j.dump(2) + "\n";
    }

    void write_artifacts(const ExperimentSpec &spec, const ExperimentResult &result)
    {
        namespace fs = std::filesystem;
        fs::create_directories(spec.output_dir);
        auto write = [&](const std::string &name, const std::string &text)
        {
            std::ofstream f(fs::path(spec.output_dir) / name, std::ios::binary);
            if (!f)
                throw std::runtime_error("cannot write " + name + " in " + spec.output_dir);
            f << text;
        };
        for (const auto &t : result.tables)
            write(t.name, t.render());
        write("manifest.json", manifest_json(spec, result));
    }
}
