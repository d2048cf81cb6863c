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

#ifndef DFRC_ALTERNATING_H
#define DFRC_ALTERNATING_H

#include <string>
#include <vector>

#include "dfrc/quadratic_forms.hpp"
#include "dfrc/receive_opt.hpp"
#include "dfrc/scenario.hpp"

namespace dfrc
{
    enum class SolveStatus
    {
        converged,
        max_iters,
        infeasible,
        penalty_failure,
        solver_error
    };
    std::string to_string(SolveStatus s);

    struct Solution
    {
        StackedBeamformer u_star;
        cvec w_star;
        std::vector<double> chi_trace;  // entry 0 is the initialization, then one per outer iteration
        std::vector<double> scnr_trace; // worst-case SCNR (linear) at the same points
        int outer_iters = 0;
        int exported_iter = 0; // iterate returned in u_star / w_star
        int previous_iter = 0; // the iterate before it, as listed in the stopping rule
        int receive_rejections = 0; // outer iterations whose receive update was not taken
        bool receive_degraded = false;
        SolveStatus status = SolveStatus::solver_error;
        std::string message;
    };

    // Power-minimizing beamformers scaled up to the full budget; throws InfeasibleError when the
    // targets cannot be met within P_max
    StackedBeamformer initialize_beamformers(const ChannelSet &channels, const ScenarioConfig &config);

    // Alternating optimization of the transmit beamformers and the receive combiner for the
    // worst-case SCNR over the candidate directions
    Solution run_algorithm1(const ScenarioConfig &config);
    Solution run_algorithm1(const ScenarioConfig &config, const ChannelSet &channels);

    // Known-direction scheme that freezes the clutter-plus-noise covariance at the previous
    // iterate and solves the resulting relaxation
    struct BaselineTrace
    {
        std::vector<double> f_values;   // objective of iterate m under the covariance of iterate m-1
        std::vector<double> scnr;       // SCNR of iterate m with its own covariance
        std::vector<bool> rank_warning; // relaxation not rank one beyond 1e-4 relative
        bool monotone = true;
        int violations = 0;
        double max_relative_drop = 0.0; // largest f_{m-1} - f_m over |f_{m-1}|, 0 when monotone
    };
    BaselineTrace run_baseline_fixed_G(const ScenarioConfig &config, const ChannelSet &channels, Angle theta_known,
                                       int iters);

    // Power budget met with equality up to 1e-4 relative
    bool verify_lemma1(const Solution &solution, const ScenarioConfig &config);
}

#endif
