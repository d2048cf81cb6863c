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

#ifndef DFRC_TRANSMIT_OPT_H
#define DFRC_TRANSMIT_OPT_H

#include <vector>

#include "dfrc/convex_core.hpp"
#include "dfrc/quadratic_forms.hpp"
#include "dfrc/scenario.hpp"

namespace dfrc
{
    // Penalty weights in the units used by the forms. The configured alignment weight is per
    // unit of radar noise power: with x and y measured relative to sqrt(sigma_r) the rate
    // program stays bounded for any weight above one. The power-slack weight multiplies a
    // surrogate that is normalized by its shift mu, so a value of one is the smallest weight
    // for which rescaling onto the power sphere can never lower the surrogate.
    double effective_eta(const SolverOptions &opts, const QuadraticFormSet &forms);

    // Tangent minorant 2 Re(u^H M u0) - u0^H M u0 of the convex form u^H M u
    struct AffineForm
    {
        cvec a;         // M u0
        double c = 0.0; // -u0^H M u0
        double operator()(const cvec &u) const { return 2.0 * a.dot(u).real() + c; }
    };
    AffineForm surrogate_affine(const cmat &M, const cvec &u0);

    // Convex subproblem around u0: maximize the minorant of u^H R_hat u (divided by mu) minus
    // nu * b, with the power ball, its linearized lower side and linearized per-user SINR targets
    ConvexQcqp build_u_subproblem(const QuadraticFormSet &forms, const SurrogatePair &surrogate, const cvec &u0,
                                  const ScenarioConfig &config, double nu);

    struct InnerResult
    {
        StackedBeamformer u;
        std::vector<double> surrogate_trace; // u^H R_hat u at u_{d,0}, u_{d,1}, ...
        std::vector<double> slack_trace;     // b* per solve
        int escalations = 0;
    };

    // S surrogate solves with re-linearization. Each solution is rescaled onto the power
    // sphere ||u||^2 = P_max, which keeps the stacked SINR ratios (homogeneous in u) and makes
    // them equal to the physical SINR. A step that would lower the surrogate is re-solved with
    // the slack weight raised tenfold (at most three times) and otherwise rejected.
    InnerResult inner_loop_u(const StackedBeamformer &u0, const QuadraticFormSet &forms, const std::vector<cmat> &Q,
                             const std::vector<double> &lambda, const ScenarioConfig &config, const SolverOptions &opts);

    // Unitary Q_i mapping C^(1/2) u onto the direction of T_i^(1/2) u; the remaining basis
    // vectors come from Gram-Schmidt over the canonical basis in index order.
    std::vector<cmat> update_alignment(const QuadraticFormSet &forms, const cvec &u);

    // Unitary whose first column is v/|v| (v nonzero)
    cmat complete_basis(const cvec &v);

    // Rates from the rate program at the amplitudes of u, with weight eta in form units
    std::vector<double> update_lambda(const QuadraticFormSet &forms, const cvec &u, double eta);
}

#endif
