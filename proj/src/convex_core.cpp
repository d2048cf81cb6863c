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

#include "dfrc/convex_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dfrc/quadratic_forms.hpp"

namespace dfrc
{
    namespace
    {
        using Status = ConeSolution::Status;

        ConeOptions cone_options(const SolverOptions &opts)
        {
            ConeOptions o;
            o.tol = opts.kkt_tol;
            o.max_iter = opts.max_iter;
            return o;
        }

        rvec stack_certificate(const ConeSolution &s)
        {
            rvec c(s.y.size() + s.z.size());
            c << s.y, s.z;
            return c;
        }

        void check_status(const ConeSolution &s, const char *what)
        {
            switch (s.status)
            {
            case Status::optimal:
                return;
            case Status::primal_infeasible:
                throw InfeasibleError(std::string(what) + ": problem is infeasible", stack_certificate(s));
            case Status::dual_infeasible:
                throw NumericalError(std::string(what) + ": problem is unbounded");
            case Status::max_iter:
                throw NonConvergenceError(std::string(what) + ": interior-point iteration cap reached (gap " +
                                          std::to_string(s.gap) + ", residuals " + std::to_string(s.pres) + "/" +
                                          std::to_string(s.dres) + ")");
            }
        }

        // [Re a; Im a], so that Re(u^H a) = real_vec(a)' [Re u; Im u]
        rvec real_vec(const cvec &a)
        {
            rvec v(2 * a.size());
            v << a.real(), a.imag();
            return v;
        }

        cvec complex_vec(const Eigen::Ref<const rvec> &v)
        {
            const auto n = v.size() / 2;
            cvec u(n);
            u.real() = v.head(n);
            u.imag() = v.tail(n);
            return u;
        }
    }

    // ----- QCQP ---------------------------------------------------------------

    QcqpResult solve_qcqp(const ConvexQcqp &p, const SolverOptions &opts)
    {
        const int n = int(p.r.size());
        if (!(p.radius_sq > 0.0))
            throw ConfigError("QCQP power ball radius must be positive");
        for (const auto &h : p.halfspaces)
            if (h.a.size() != n)
                throw ConfigError("QCQP half-space dimension mismatch");
        for (const auto &q : p.quadratics)
            if (q.a.size() != n || q.M.rows() != n || q.M.cols() != n || q.gamma < 0.0)
                throw ConfigError("QCQP quadratic constraint dimension mismatch");

        // variables: v = [Re u; Im u] / sqrt(P), then b / P when the slack is present
        const double P = p.radius_sq, sp = std::sqrt(P);
        const int nv = 2 * n + (p.has_slack ? 1 : 0);
        const int ib = 2 * n;

        ConeProgram cp;
        cp.c = rvec::Zero(nv);
        cp.c.head(2 * n) = -2.0 * sp * real_vec(p.r);
        if (p.has_slack)
            cp.c[ib] = p.slack_weight * P;
        const double cscale = std::max(cp.c.cwiseAbs().maxCoeff(), 1e-300);
        cp.c /= cscale;

        std::vector<rvec> rows_G;
        std::vector<double> rows_h;

        // half-spaces and b >= 0
        for (const auto &hs : p.halfspaces)
        {
            rvec g = rvec::Zero(nv);
            g.head(2 * n) = -2.0 * sp * real_vec(hs.a);
            if (p.has_slack)
                g[ib] = -hs.slack_coeff * P;
            double sc = std::max({g.cwiseAbs().maxCoeff(), std::abs(hs.offset), 1e-300});
            rows_G.push_back(g / sc);
            rows_h.push_back(hs.offset / sc);
        }
        if (p.has_slack)
        {
            rvec g = rvec::Zero(nv);
            g[ib] = -1.0;
            rows_G.push_back(g);
            rows_h.push_back(0.0);
        }
        cp.dims.nonneg = int(rows_G.size());

        auto push_block = [&](const rmat &G, const rvec &h)
        {
            for (int r = 0; r < G.rows(); ++r)
            {
                rows_G.push_back(G.row(r).transpose());
                rows_h.push_back(h[r]);
            }
        };

        // power ball
        if (p.has_slack)
        {
            // ||v||^2 <= 1 + b  as  (2 + b, 2 v, b) in the second-order cone
            rmat G = rmat::Zero(2 * n + 2, nv);
            rvec h = rvec::Zero(2 * n + 2);
            h[0] = 2.0;
            G(0, ib) = -1.0;
            G.block(1, 0, 2 * n, 2 * n) = -2.0 * rmat::Identity(2 * n, 2 * n);
            G(2 * n + 1, ib) = -1.0;
            push_block(G, h);
            cp.dims.soc.push_back(2 * n + 2);
        }
        else
        {
            rmat G = rmat::Zero(2 * n + 1, nv);
            rvec h = rvec::Zero(2 * n + 1);
            h[0] = 1.0;
            G.block(1, 0, 2 * n, 2 * n) = -rmat::Identity(2 * n, 2 * n);
            push_block(G, h);
            cp.dims.soc.push_back(2 * n + 1);
        }

        // quadratic constraints  l(v) >= |F v|^2  as  (l + 1, 2 F v, l - 1), after scaling by kappa
        for (const auto &qc : p.quadratics)
        {
            rmat F = std::sqrt(qc.gamma * P) * real_embedding(psd_sqrt(qc.M));
            rvec la = 2.0 * sp * real_vec(qc.a);
            double fn = F.squaredNorm() / double(std::max<Eigen::Index>(1, F.rows()));
            double kappa = 1.0 / std::max({fn, la.cwiseAbs().maxCoeff(), std::abs(qc.offset), 1e-300});
            rmat G = rmat::Zero(2 * n + 2, nv);
            rvec h = rvec::Zero(2 * n + 2);
            G.block(0, 0, 1, 2 * n) = -kappa * la.transpose();
            h[0] = kappa * qc.offset + 1.0;
            G.block(1, 0, 2 * n, 2 * n) = -2.0 * std::sqrt(kappa) * F;
            G.block(2 * n + 1, 0, 1, 2 * n) = -kappa * la.transpose();
            h[2 * n + 1] = kappa * qc.offset - 1.0;
            push_block(G, h);
            cp.dims.soc.push_back(2 * n + 2);
        }

        cp.G.resize(Eigen::Index(rows_G.size()), nv);
        cp.h.resize(Eigen::Index(rows_h.size()));
        for (size_t r = 0; r < rows_G.size(); ++r)
        {
            cp.G.row(Eigen::Index(r)) = rows_G[r].transpose();
            cp.h[Eigen::Index(r)] = rows_h[r];
        }
        cp.A = rmat::Zero(0, nv);
        cp.b = rvec::Zero(0);

        ConeSolution s = solve_cone_program(cp, cone_options(opts));
        check_status(s, "QCQP");

        QcqpResult res;
        res.u = sp * complex_vec(s.x.head(2 * n));
        res.b = p.has_slack ? std::max(0.0, s.x[ib]) * P : 0.0;
        res.objective = 2.0 * p.r.dot(res.u).real() + p.r0 - p.slack_weight * res.b;
        res.dual_bound = -s.dual_obj * cscale + p.r0;
        res.cone_dual = s.z;
        res.iterations = s.iterations;
        return res;
    }

    // ----- spectrahedron max-min ----------------------------------------------

    SpectrahedronResult solve_spectrahedron_minmax(const SpectrahedronMinMax &p, const SolverOptions &opts)
    {
        const int I = int(p.M.size());
        if (I < 1)
            throw ConfigError("spectrahedron problem needs at least one matrix");
        const int n = int(p.M[0].rows());
        double scale = 0.0;
        for (const auto &M : p.M)
        {
            if (M.rows() != n || M.cols() != n)
                throw ConfigError("spectrahedron matrices must share one square size");
            if (!M.allFinite())
                throw NumericalError("spectrahedron matrices must be finite");
            if ((M - M.adjoint()).norm() > 1e-9 * std::max(1.0, M.norm()))
                throw NumericalError("spectrahedron matrices must be Hermitian");
            scale = std::max(scale, M.norm());
        }

        SpectrahedronResult res;
        if (scale == 0.0)
        {
            res.W = cmat::Identity(n, n) / double(n);
            res.t = 0.0;
            res.weights = rvec::Constant(I, 1.0 / I);
            return res;
        }

        // dual form: minimize z  s.t.  z I - sum_i y_i M_i PSD,  y >= 0,  sum y = 1
        const int m = packed_size(2 * n);
        ConeProgram cp;
        cp.c = rvec::Zero(I + 1);
        cp.c[I] = 1.0;
        cp.G = rmat::Zero(I + m, I + 1);
        cp.h = rvec::Zero(I + m);
        for (int i = 0; i < I; ++i)
        {
            cp.G(i, i) = -1.0;
            cp.G.block(I, i, m, 1) = pack_sym(real_embedding(herm(p.M[i]) / scale));
        }
        cp.G.block(I, I, m, 1) = -pack_sym(rmat::Identity(2 * n, 2 * n));
        cp.A = rmat::Zero(1, I + 1);
        cp.A.block(0, 0, 1, I).setOnes();
        cp.b = rvec::Ones(1);
        cp.dims.nonneg = I;
        cp.dims.psd = {2 * n};

        ConeSolution s = solve_cone_program(cp, cone_options(opts));
        check_status(s, "spectrahedron max-min");

        res.W = complex_from_embedding(unpack_sym(s.z.tail(m), 2 * n));
        res.W /= res.W.trace().real();
        res.weights = s.x.head(I);
        double t = INFINITY;
        for (const auto &M : p.M)
            t = std::min(t, (res.W * M).trace().real());
        res.t = t;
        res.iterations = s.iterations;
        return res;
    }

    // ----- rate program ---------------------------------------------------------

    double lambda_program_objective(const std::vector<double> &lambda, const std::vector<double> &x, double y, double eta)
    {
        double pen = 0.0;
        for (size_t i = 0; i < x.size(); ++i)
        {
            double d = x[i] - std::sqrt(std::max(0.0, lambda[i])) * y;
            pen += d * d;
        }
        return *std::min_element(lambda.begin(), lambda.end()) - eta * pen;
    }

    std::vector<double> solve_lambda_program(const std::vector<double> &x, double y, double eta)
    {
        const int I = int(x.size());
        if (I < 1)
            throw ConfigError("rate program needs at least one entry");
        if (!(y > 0.0) || !std::isfinite(y))
            throw NumericalError("rate program needs a positive clutter amplitude");
        if (!(eta >= 0.0))
            throw ConfigError("rate program weight must be non-negative");
        for (double v : x)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw NumericalError("rate program amplitudes must be finite and non-negative");

        std::vector<double> xs(x);
        std::sort(xs.begin(), xs.end());
        if (eta * y * y * I <= 1.0)
            throw NumericalError("rate program is unbounded: penalty weight too small for the clutter level");

        // phi(s) with s = sqrt(t): s^2 - eta * sum (s y - x_i)_+^2
        auto phi = [&](double sv)
        {
            double pen = 0.0;
            for (double xi : xs)
            {
                double d = sv * y - xi;
                if (d > 0.0)
                    pen += d * d;
            }
            return sv * sv - eta * pen;
        };

        double best_s = xs[0] / y;
        double best = phi(best_s);
        double prefix = 0.0;
        for (int m = 1; m <= I; ++m)
        {
            prefix += xs[m - 1];
            double lo = xs[m - 1] / y;
            double hi = (m < I) ? xs[m] / y : INFINITY;
            double den = m * y - 1.0 / (eta * y);
            double cand = den > 0.0 ? prefix / den : hi;
            cand = std::clamp(cand, lo, hi);
            if (!std::isfinite(cand))
                continue;
            double v = phi(cand);
            if (v > best)
            {
                best = v;
                best_s = cand;
            }
        }

        const double t = best_s * best_s;
        std::vector<double> lambda(I);
        for (int i = 0; i < I; ++i)
            lambda[i] = std::max(t, x[i] * x[i] / (y * y));
        return lambda;
    }

    // ----- downlink power minimization ----------------------------------------------

    cvec solve_power_minimization(const std::vector<cvec> &h, const std::vector<double> &gamma, double noise,
                                  const SolverOptions &opts)
    {
        const int K = int(h.size());
        if (K < 1 || int(gamma.size()) != K)
            throw ConfigError("power minimization needs one SINR target per user");
        if (!(noise > 0.0))
            throw ConfigError("noise power must be positive");
        const int nt = int(h[0].size());
        const int N = K * nt;

        std::vector<cvec> hn;
        double hmax = 0.0;
        for (const auto &hk : h)
        {
            if (hk.size() != nt)
                throw ConfigError("channels must share one length");
            hn.push_back(hk / std::sqrt(noise));
            hmax = std::max(hmax, hn.back().norm());
        }
        if (!(hmax > 0.0))
            throw InfeasibleError("all channels are zero");
        const double su = 1.0 / hmax; // u = su * v keeps h^H u of order one

        // coefficient rows of Re(h^H u_i) and Im(h^H u_i) on v = [Re u; Im u]
        auto re_row = [&](const cvec &hk, int i)
        {
            rvec r = rvec::Zero(2 * N);
            r.segment(i * nt, nt) = su * hk.real();
            r.segment(N + i * nt, nt) = su * hk.imag();
            return r;
        };
        auto im_row = [&](const cvec &hk, int i)
        {
            rvec r = rvec::Zero(2 * N);
            r.segment(i * nt, nt) = -su * hk.imag();
            r.segment(N + i * nt, nt) = su * hk.real();
            return r;
        };

        // per user: Re(h_k^H u_k) / sqrt(gamma_k) >= ||(h_k^H u_i for i != k, 1)||. Keeping the own
        // term out of the norm avoids the nearly flat cone of aperture sqrt(1 + 1/gamma_k) that
        // high targets would produce.
        const int nv = 2 * N + 1; // v, t
        const int rows = (2 * N + 1) + K * (2 * K);
        ConeProgram cp;
        cp.c = rvec::Zero(nv);
        cp.c[2 * N] = 1.0;
        cp.G = rmat::Zero(rows, nv);
        cp.h = rvec::Zero(rows);
        cp.G(0, 2 * N) = -1.0;
        cp.G.block(1, 0, 2 * N, 2 * N) = -rmat::Identity(2 * N, 2 * N);
        cp.dims.soc.push_back(2 * N + 1);
        int r0 = 2 * N + 1;
        cp.A = rmat::Zero(K, nv);
        cp.b = rvec::Zero(K);
        for (int k = 0; k < K; ++k)
        {
            if (!(gamma[k] > 0.0))
                throw ConfigError("SINR targets must be positive");
            cp.G.block(r0, 0, 1, 2 * N) = -re_row(hn[k], k).transpose() / std::sqrt(gamma[k]);
            int row = r0 + 1;
            for (int i = 0; i < K; ++i)
            {
                if (i == k)
                    continue;
                cp.G.block(row++, 0, 1, 2 * N) = -re_row(hn[k], i).transpose();
                cp.G.block(row++, 0, 1, 2 * N) = -im_row(hn[k], i).transpose();
            }
            cp.h[row] = 1.0;
            cp.dims.soc.push_back(2 * K);
            cp.A.block(k, 0, 1, 2 * N) = im_row(hn[k], k).transpose();
            r0 += 2 * K;
        }

        ConeSolution s = solve_cone_program(cp, cone_options(opts));
        check_status(s, "power minimization");
        return su * complex_vec(s.x.head(2 * N));
    }

    // ----- downlink semidefinite relaxation ---------------------------------------------

    DownlinkSdrResult solve_downlink_sdr(const cmat &C, const std::vector<cvec> &h, const std::vector<double> &gamma,
                                         double noise, double p_max, const SolverOptions &opts)
    {
        const int K = int(h.size());
        const int n = int(C.rows());
        if (K < 1 || int(gamma.size()) != K)
            throw ConfigError("downlink relaxation needs one SINR target per user");
        if (!(p_max > 0.0) || !(noise > 0.0))
            throw ConfigError("downlink relaxation needs positive power and noise");
        const double cs = std::max(C.norm(), 1e-300);

        // U_k = p_max * Z_k; channel forms scaled to p_max |h|^2 / noise, then normalized per column
        std::vector<cmat> Hs;
        std::vector<double> hs;
        for (const auto &hk : h)
        {
            if (hk.size() != n)
                throw ConfigError("channel length does not match the relaxation size");
            cmat H = (p_max / noise) * (hk * hk.adjoint());
            hs.push_back(std::max(H.norm(), 1e-300));
            Hs.push_back(H);
        }

        // variables x = (beta, rho'_1..rho'_K), rho_k = rho'_k / hs_k
        const int nv = K + 1;
        const int m = packed_size(2 * n);
        ConeProgram cp;
        cp.c = rvec::Zero(nv);
        cp.c[0] = 1.0;
        for (int k = 0; k < K; ++k)
            cp.c[k + 1] = -1.0 / hs[k];
        cp.G = rmat::Zero(nv + K * m, nv);
        cp.h = rvec::Zero(nv + K * m);
        cp.G.topLeftCorner(nv, nv) = -rmat::Identity(nv, nv);
        const rvec eye = pack_sym(rmat::Identity(2 * n, 2 * n));
        const rvec negC = pack_sym(real_embedding(-herm(C) / cs));
        std::vector<rvec> Hp;
        for (int k = 0; k < K; ++k)
            Hp.push_back(pack_sym(real_embedding(Hs[k] / hs[k])));
        for (int k = 0; k < K; ++k)
        {
            const int o = nv + k * m;
            cp.h.segment(o, m) = negC;
            cp.G.block(o, 0, m, 1) = -eye;
            for (int i = 0; i < K; ++i)
                cp.G.block(o, i + 1, m, 1) = (i == k) ? rvec(Hp[i] / gamma[k]) : rvec(-Hp[i]);
        }
        cp.dims.nonneg = nv;
        cp.dims.psd.assign(K, 2 * n);
        cp.A = rmat::Zero(0, nv);
        cp.b = rvec::Zero(0);

        ConeSolution s = solve_cone_program(cp, cone_options(opts));
        check_status(s, "downlink relaxation");

        DownlinkSdrResult res;
        for (int k = 0; k < K; ++k)
        {
            cmat U = p_max * complex_from_embedding(unpack_sym(s.z.segment(nv + k * m, m), 2 * n));
            res.value += (C * U).trace().real();
            res.U.push_back(std::move(U));
        }
        return res;
    }
}
