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

#include "dfrc/transmit_opt.hpp"

#include <algorithm>
#include <cmath>

namespace dfrc
{
    double effective_eta(const SolverOptions &opts, const QuadraticFormSet &forms)
    {
        return opts.penalty_eta / forms.sigma_r;
    }

    AffineForm surrogate_affine(const cmat &M, const cvec &u0)
    {
        AffineForm f;
        f.a = M * u0;
        f.c = -u0.dot(f.a).real();
        return f;
    }

    ConvexQcqp build_u_subproblem(const QuadraticFormSet &forms, const SurrogatePair &surrogate, const cvec &u0,
                                  const ScenarioConfig &config, double nu)
    {
        if (!u0.allFinite())
            throw NumericalError("linearization point is not finite");
        const double P = forms.p_max;
        ConvexQcqp p;
        auto obj = surrogate_affine(surrogate.R_hat / surrogate.mu, u0);
        p.r = obj.a;
        p.r0 = obj.c;
        p.slack_weight = nu;
        p.radius_sq = P;
        p.has_slack = true;

        // 2 Re(u^H u0) - |u0|^2 >= P - b
        ConvexQcqp::Halfspace lower;
        lower.a = u0;
        lower.offset = -u0.squaredNorm() - P;
        lower.slack_coeff = 1.0;
        p.halfspaces.push_back(lower);

        for (int k = 0; k < forms.n_users(); ++k)
        {
            auto lin = surrogate_affine(forms.signal_stacked[k], u0);
            ConvexQcqp::Quadratic q;
            q.a = lin.a;
            q.offset = lin.c;
            q.M = forms.interf_stacked[k];
            q.gamma = config.sinr_threshold(k);
            p.quadratics.push_back(q);
        }
        return p;
    }

    InnerResult inner_loop_u(const StackedBeamformer &u0, const QuadraticFormSet &forms, const std::vector<cmat> &Q,
                             const std::vector<double> &lambda, const ScenarioConfig &config, const SolverOptions &opts)
    {
        const double P = forms.p_max;
        SurrogatePair sp = build_surrogate_R(forms, Q, lambda);
        auto value = [&](const cvec &u)
        { return u.dot(sp.R_hat * u).real(); };

        InnerResult res;
        res.u = u0;
        res.surrogate_trace.push_back(value(u0.u));
        for (int s = 0; s < opts.inner_S; ++s)
        {
            const double v0 = res.surrogate_trace.back();
            double nu = opts.penalty_nu;
            bool accepted = false;
            for (int esc = 0; esc <= 3 && !accepted; ++esc, nu *= 10.0)
            {
                auto sub = build_u_subproblem(forms, sp, res.u.u, config, nu);
                auto sol = solve_qcqp(sub, opts);
                cvec u = sol.u * std::sqrt(P / sol.u.squaredNorm());
                double v = value(u);
                res.slack_trace.push_back(sol.b);
                if (v >= v0 - 1e-10 * std::abs(v0))
                {
                    res.u.u = u;
                    res.surrogate_trace.push_back(v);
                    accepted = true;
                }
                else
                    ++res.escalations;
            }
            if (!accepted)
                break; // no admissible step left; the current point is kept
        }
        return res;
    }

    cmat complete_basis(const cvec &v)
    {
        const auto n = v.size();
        cmat B = cmat::Zero(n, n);
        B.col(0) = v / v.norm();
        Eigen::Index filled = 1;
        for (Eigen::Index e = 0; e < n && filled < n; ++e)
        {
            cvec c = cvec::Zero(n);
            c[e] = 1.0;
            // two passes of classical Gram-Schmidt for numerical orthogonality
            for (int pass = 0; pass < 2; ++pass)
                c -= B.leftCols(filled) * (B.leftCols(filled).adjoint() * c);
            double nrm = c.norm();
            if (nrm < 1e-10)
                continue;
            B.col(filled++) = c / nrm;
        }
        return B;
    }

    std::vector<cmat> update_alignment(const QuadraticFormSet &forms, const cvec &u)
    {
        const auto n = u.size();
        cvec cu = forms.clutter_stacked_sqrt * u;
        if (!(cu.norm() > 0.0))
            throw NumericalError("clutter-plus-noise amplitude vanished");
        cmat Qb = complete_basis(cu);
        std::vector<cmat> Q;
        for (int i = 0; i < forms.n_targets(); ++i)
        {
            cvec tu = forms.target_stacked_sqrt[i] * u;
            if (!(tu.norm() > 0.0))
            {
                Q.push_back(cmat::Identity(n, n));
                continue;
            }
            Q.push_back(complete_basis(tu) * Qb.adjoint());
        }
        return Q;
    }

    std::vector<double> update_lambda(const QuadraticFormSet &forms, const cvec &u, double eta)
    {
        if (!(u.norm() > 0.0))
            throw NumericalError("rates need a nonzero beamformer");
        return solve_lambda_program(target_amplitudes(u, forms), clutter_amplitude(u, forms), eta);
    }
}
