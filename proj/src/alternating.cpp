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

#include "dfrc/alternating.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "dfrc/convex_core.hpp"
#include "dfrc/transmit_opt.hpp"

namespace dfrc
{
    std::string to_string(SolveStatus s)
    {
        switch (s)
        {
        case SolveStatus::converged:
            return "converged";
        case SolveStatus::max_iters:
            return "max-iters";
        case SolveStatus::infeasible:
            return "infeasible";
        case SolveStatus::penalty_failure:
            return "penalty-failure";
        case SolveStatus::solver_error:
            return "solver-error";
        }
        return "unknown";
    }

    StackedBeamformer initialize_beamformers(const ChannelSet &channels, const ScenarioConfig &config)
    {
        const int K = config.n_users();
        std::vector<double> gamma;
        for (int k = 0; k < K; ++k)
            gamma.push_back(config.sinr_threshold(k));
        cvec u = solve_power_minimization(channels.h, gamma, config.noise_power(), config.solver);
        const double P = config.p_max();
        const double pmin = u.squaredNorm();
        if (!(pmin > 0.0) || pmin > P)
            throw InfeasibleError("SINR targets need " + std::to_string(watts_to_dbm(pmin)) + " dBm, above the budget");
        return StackedBeamformer(u * std::sqrt(P / pmin), K, config.geometry.n_tx);
    }

    namespace
    {
        struct TransmitState
        {
            QuadraticFormSet forms;
            std::vector<cmat> Q;
            std::vector<double> lambda;
            double chi = 0.0;
        };

        TransmitState evaluate(const cvec &w, const cvec &u, const ChannelSet &channels, const ScenarioConfig &config)
        {
            TransmitState st;
            st.forms = build_forms(w, channels, config);
            double eta = effective_eta(config.solver, st.forms);
            st.Q = update_alignment(st.forms, u);
            st.lambda = update_lambda(st.forms, u, eta);
            st.chi = chi_objective(u, st.Q, st.lambda, st.forms, eta);
            return st;
        }
    }

    Solution run_algorithm1(const ScenarioConfig &config)
    {
        return run_algorithm1(config, generate_channels(config));
    }

    Solution run_algorithm1(const ScenarioConfig &config, const ChannelSet &channels)
    {
        config.validate();
        const auto &opts = config.solver;
        Solution sol;
        try
        {
            StackedBeamformer u = initialize_beamformers(channels, config);
            cvec w0 = rx_steering(config.geometry, config.target_angles[0]) / std::sqrt(double(config.geometry.n_rx));
            auto rx = dinkelbach_solve(build_fractional(u, config), opts, w0);
            cvec w = rx.w;
            sol.receive_degraded = rx.degraded;
            TransmitState st = evaluate(w, u.u, channels, config);

            sol.u_star = u;
            sol.w_star = w;
            sol.chi_trace.push_back(st.chi);
            sol.scnr_trace.push_back(worst_case_scnr(u, w, config));
            sol.status = SolveStatus::max_iters;

            for (int d = 1; d <= opts.outer_d_max; ++d)
            {
                auto inner = inner_loop_u(u, st.forms, st.Q, st.lambda, config, opts);
                u = inner.u;

                // transmit-only update of the alignment and the rates
                TransmitState keep = evaluate(w, u.u, channels, config);

                // receive update, taken only if the penalized objective does not drop
                auto rxd = dinkelbach_solve(build_fractional(u, config), opts, w);
                TransmitState cand = evaluate(rxd.w, u.u, channels, config);
                if (cand.chi >= keep.chi)
                {
                    w = rxd.w;
                    st = std::move(cand);
                    sol.receive_degraded = sol.receive_degraded || rxd.degraded;
                }
                else
                {
                    st = std::move(keep);
                    ++sol.receive_rejections;
                }

                const double prev = sol.chi_trace.back();
                sol.chi_trace.push_back(st.chi);
                sol.scnr_trace.push_back(worst_case_scnr(u, w, config));
                sol.u_star = u;
                sol.w_star = w;
                sol.outer_iters = d;
                sol.exported_iter = d;
                sol.previous_iter = d - 1;
                if (std::abs(st.chi - prev) <= opts.epsilon * std::abs(prev))
                {
                    sol.status = SolveStatus::converged;
                    break;
                }
            }
        }
        catch (const InfeasibleError &e)
        {
            sol.status = SolveStatus::infeasible;
            sol.message = e.what();
        }
        catch (const PenaltyFailure &e)
        {
            sol.status = SolveStatus::penalty_failure;
            sol.message = e.what();
        }
        catch (const std::runtime_error &e)
        {
            sol.status = SolveStatus::solver_error;
            sol.message = e.what();
        }
        return sol;
    }

    BaselineTrace run_baseline_fixed_G(const ScenarioConfig &config, const ChannelSet &channels, Angle theta_known, int iters)
    {
        config.validate();
        if (iters < 1)
            throw ConfigError("baseline needs at least one iteration");
        const auto &geom = config.geometry;
        const int K = config.n_users();
        const int nt = geom.n_tx, nr = geom.n_rx;
        const double P = config.p_max();
        const double sr = config.sigma_r();
        const double gain = config.target_gain_of(0);
        const cmat A0 = response_matrix(geom, theta_known).entries;

        std::vector<double> gamma;
        for (int k = 0; k < K; ++k)
            gamma.push_back(config.sinr_threshold(k));

        // clutter-plus-noise covariance at the receive array, normalized by sigma_r
        auto covariance = [&](const StackedBeamformer &u)
        {
            cmat S = cmat::Zero(nt, nt);
            for (int k = 0; k < K; ++k)
                S += u.block(k) * u.block(k).adjoint();
            cmat G = cmat::Identity(nr, nr);
            for (const auto &c : config.clutters)
            {
                cmat A = response_matrix(geom, c.angle).entries;
                G += (c.gain / sr) * A * S * A.adjoint();
            }
            return herm(G);
        };
        auto objective_matrix = [&](const cmat &G)
        {
            return herm((gain / sr) * A0.adjoint() * G.ldlt().solve(A0));
        };
        auto objective = [&](const StackedBeamformer &u, const cmat &C)
        {
            double f = 0.0;
            for (int k = 0; k < K; ++k)
                f += u.block(k).dot(C * u.block(k)).real();
            return f;
        };

        // the audit compares objective values at the 1e-8 level, so the relaxation is solved
        // more tightly than the solver default
        SolverOptions sdr_opts = config.solver;
        sdr_opts.kkt_tol = std::min(sdr_opts.kkt_tol, 1e-11);

        BaselineTrace tr;
        StackedBeamformer u = initialize_beamformers(channels, config);
        for (int m = 1; m <= iters; ++m)
        {
            cmat C = objective_matrix(covariance(u));
            auto sdr = solve_downlink_sdr(C, channels.h, gamma, config.noise_power(), P, sdr_opts);
            StackedBeamformer next = StackedBeamformer::zeros(K, nt);
            for (int k = 0; k < K; ++k)
            {
                Eigen::SelfAdjointEigenSolver<cmat> es(sdr.U[k]);
                double tr_k = std::max(0.0, sdr.U[k].trace().real());
                next.block(k) = std::sqrt(tr_k) * es.eigenvectors().col(nt - 1);
            }
            // feasibility repair: the relaxation may leave the budget slightly exceeded
            if (next.power() > P)
                next.u *= std::sqrt(P / next.power());
            double f = objective(next, C);
            tr.rank_warning.push_back(std::abs(f - sdr.value) > 1e-4 * std::abs(sdr.value));
            tr.f_values.push_back(f);
            cmat Gn = covariance(next);
            tr.scnr.push_back(objective(next, objective_matrix(Gn)));
            u = next;
        }
        for (size_t m = 1; m < tr.f_values.size(); ++m)
        {
            double drop = (tr.f_values[m - 1] - tr.f_values[m]) / std::abs(tr.f_values[m - 1]);
            tr.max_relative_drop = std::max(tr.max_relative_drop, drop);
            if (drop > 1e-8)
            {
                tr.monotone = false;
                ++tr.violations;
            }
        }
        return tr;
    }

    bool verify_lemma1(const Solution &solution, const ScenarioConfig &config)
    {
        const double P = config.p_max();
        return std::abs(solution.u_star.power() - P) <= 1e-4 * P;
    }
}
