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

#ifndef DFRC_CONVEX_CORE_H
#define DFRC_CONVEX_CORE_H

#include <vector>

#include "dfrc/cone_program.hpp"
#include "dfrc/scenario.hpp"
#include "dfrc/types.hpp"

namespace dfrc
{
    // Convex QCQP over a complex vector u and a scalar power slack b >= 0:
    //
    //   maximize    2 Re(u^H r) + r0 - slack_weight * b
    //   subject to  ||u||^2 <= radius_sq + b                         (power ball)
    //               2 Re(u^H a_j) + c_j + d_j * b >= 0                 (half-spaces)
    //               2 Re(u^H a_k) + c_k >= gamma_k * u^H M_k u         (M_k PSD)
    //
    // Without the slack (has_slack = false) b is fixed at zero.
    struct ConvexQcqp
    {
        struct Halfspace
        {
            cvec a;
            double offset = 0.0;
            double slack_coeff = 0.0;
        };
        struct Quadratic
        {
            cvec a;
            double offset = 0.0;
            cmat M;
            double gamma = 1.0;
        };

        cvec r;
        double r0 = 0.0;
        double slack_weight = 0.0;
        double radius_sq = 1.0;
        bool has_slack = true;
        std::vector<Halfspace> halfspaces;
        std::vector<Quadratic> quadratics;
    };

    struct QcqpResult
    {
        cvec u;
        double b = 0.0;
        double objective = 0.0;  // primal value
        double dual_bound = 0.0; // dual value, an upper bound on the optimum
        rvec cone_dual;          // dual variables of the conic reformulation
        int iterations = 0;
    };

    // Throws InfeasibleError (with the conic certificate) or NonConvergenceError
    QcqpResult solve_qcqp(const ConvexQcqp &p, const SolverOptions &opts);

    // max over W PSD, Tr W = 1 of min_i Tr(W M_i)
    struct SpectrahedronMinMax
    {
        std::vector<cmat> M;
    };

    struct SpectrahedronResult
    {
        cmat W;
        double t = 0.0;
        rvec weights; // optimal convex combination of the M_i (dual variables)
        int iterations = 0;
    };

    SpectrahedronResult solve_spectrahedron_minmax(const SpectrahedronMinMax &p, const SolverOptions &opts);

    // Rate program: maximize min_i lambda_i - eta * sum_i (x_i - sqrt(lambda_i) y)^2 over lambda >= 0.
    //
    // Fixing t = min_i lambda_i, each lambda_i = max(t, x_i^2 / y^2) is optimal, which leaves the
    // concave 1-D problem max_t t - eta * sum_i max(0, sqrt(t) y - x_i)^2. Its stationary point
    // has a closed form once the active set {i : x_i < sqrt(t) y} is known, and the active set
    // is a prefix of the sorted x. The program is unbounded unless eta * y^2 * I > 1.
    std::vector<double> solve_lambda_program(const std::vector<double> &x, double y, double eta);
    double lambda_program_objective(const std::vector<double> &lambda, const std::vector<double> &x, double y, double eta);

    // Classical downlink power minimization: minimize sum ||u_k||^2 subject to
    // SINR_k >= gamma_k with noise power `noise`. Channels are columns of the list.
    // Throws InfeasibleError when no beamformer meets the targets.
    cvec solve_power_minimization(const std::vector<cvec> &h, const std::vector<double> &gamma, double noise,
                                  const SolverOptions &opts);

    // Semidefinite relaxation of  maximize sum_k u_k^H C u_k  subject to per-user SINR targets and
    // sum ||u_k||^2 <= p_max. Returns the covariance matrices U_k and the optimal value.
    struct DownlinkSdrResult
    {
        std::vector<cmat> U;
        double value = 0.0;
    };
    DownlinkSdrResult solve_downlink_sdr(const cmat &C, const std::vector<cvec> &h, const std::vector<double> &gamma,
                                         double noise, double p_max, const SolverOptions &opts);
}

#endif
