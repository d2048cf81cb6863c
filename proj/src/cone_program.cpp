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

// Dense primal-dual interior-point method for small cone programs. Homogeneous self-dual
// embedding, Nesterov-Todd scaling and a Mehrotra predictor-corrector step, following the
// layout of the conelp solver in CVXOPT. Everything is dense: problems here have at most a
// few hundred cone entries.

#include "dfrc/cone_program.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace dfrc
{
    int packed_size(int n) { return n * (n + 1) / 2; }

    int ConeDims::size() const
    {
        int m = nonneg;
        for (int q : soc)
            m += q;
        for (int n : psd)
            m += packed_size(n);
        return m;
    }

    int ConeDims::degree() const
    {
        int d = nonneg + int(soc.size());
        for (int n : psd)
            d += n;
        return d;
    }

    rvec pack_sym(const rmat &X)
    {
        const int n = int(X.rows());
        rvec v(packed_size(n));
        int p = 0;
        for (int j = 0; j < n; ++j)
            for (int i = j; i < n; ++i)
                v[p++] = (i == j) ? X(i, j) : M_SQRT2 * 0.5 * (X(i, j) + X(j, i));
        return v;
    }

    rmat unpack_sym(const Eigen::Ref<const rvec> &v, int n)
    {
        rmat X(n, n);
        int p = 0;
        for (int j = 0; j < n; ++j)
            for (int i = j; i < n; ++i)
            {
                double val = (i == j) ? v[p] : v[p] / M_SQRT2;
                X(i, j) = val;
                X(j, i) = val;
                ++p;
            }
        return X;
    }

    rmat real_embedding(const cmat &H)
    {
        const auto n = H.rows();
        rmat E(2 * n, 2 * n);
        E.topLeftCorner(n, n) = H.real();
        E.topRightCorner(n, n) = -H.imag();
        E.bottomLeftCorner(n, n) = H.imag();
        E.bottomRightCorner(n, n) = H.real();
        return E;
    }

    cmat complex_from_embedding(const rmat &Z)
    {
        const auto n = Z.rows() / 2;
        cmat W(n, n);
        W.real() = Z.topLeftCorner(n, n) + Z.bottomRightCorner(n, n);
        W.imag() = Z.bottomLeftCorner(n, n) - Z.topRightCorner(n, n);
        return herm(W);
    }

    namespace
    {
        // Offsets of the individual cones inside a cone vector
        struct Layout
        {
            const ConeDims &dims;
            std::vector<int> soc_off, psd_off;

            explicit Layout(const ConeDims &d) : dims(d)
            {
                int p = d.nonneg;
                for (int q : d.soc)
                {
                    soc_off.push_back(p);
                    p += q;
                }
                for (int n : d.psd)
                {
                    psd_off.push_back(p);
                    p += packed_size(n);
                }
            }
        };

        // Jordan-algebra identity
        rvec cone_identity(const Layout &L)
        {
            rvec e = rvec::Zero(L.dims.size());
            e.head(L.dims.nonneg).setOnes();
            for (size_t k = 0; k < L.dims.soc.size(); ++k)
                e[L.soc_off[k]] = 1.0;
            for (size_t k = 0; k < L.dims.psd.size(); ++k)
                e.segment(L.psd_off[k], packed_size(L.dims.psd[k])) = pack_sym(rmat::Identity(L.dims.psd[k], L.dims.psd[k]));
            return e;
        }

        // Smallest "eigenvalue" over all cones (positive iff v is interior)
        double min_eigenvalue(const Layout &L, const rvec &v)
        {
            double m = std::numeric_limits<double>::infinity();
            if (L.dims.nonneg > 0)
                m = v.head(L.dims.nonneg).minCoeff();
            for (size_t k = 0; k < L.dims.soc.size(); ++k)
            {
                const int q = L.dims.soc[k], o = L.soc_off[k];
                m = std::min(m, v[o] - v.segment(o + 1, q - 1).norm());
            }
            for (size_t k = 0; k < L.dims.psd.size(); ++k)
            {
                const int n = L.dims.psd[k];
                rmat X = unpack_sym(v.segment(L.psd_off[k], packed_size(n)), n);
                m = std::min(m, Eigen::SelfAdjointEigenSolver<rmat>(X, Eigen::EigenvaluesOnly).eigenvalues().minCoeff());
            }
            return m;
        }

        // Jordan product
        rvec circ(const Layout &L, const rvec &u, const rvec &v)
        {
            rvec w(u.size());
            const int l = L.dims.nonneg;
            w.head(l) = u.head(l).cwiseProduct(v.head(l));
            for (size_t k = 0; k < L.dims.soc.size(); ++k)
            {
                const int q = L.dims.soc[k], o = L.soc_off[k];
                w[o] = u.segment(o, q).dot(v.segment(o, q));
                w.segment(o + 1, q - 1) = u[o] * v.segment(o + 1, q - 1) + v[o] * u.segment(o + 1, q - 1);
            }
            for (size_t k = 0; k < L.dims.psd.size(); ++k)
            {
                const int n = L.dims.psd[k], o = L.psd_off[k], m = packed_size(n);
                rmat U = unpack_sym(u.segment(o, m), n), V = unpack_sym(v.segment(o, m), n);
                w.segment(o, m) = pack_sym(0.5 * (U * V + V * U));
            }
            return w;
        }

        // Nesterov-Todd scaling W with W z = W^-T s = lambda
        struct Scaling
        {
            rvec d;                      // nonnegative part: W = diag(d)
            std::vector<rmat> soc_W, soc_Winv;
            std::vector<rmat> R, Rinv;   // PSD part: W(X) = R' X R
            rvec lambda;                 // scaled point, packed like s and z
            std::vector<rvec> psd_lambda; // eigenvalues of the diagonal PSD blocks of lambda
        };

        bool compute_scaling(const Layout &L, const rvec &s, const rvec &z, Scaling &W)
        {
            const int l = L.dims.nonneg;
            W.lambda.resize(s.size());
            W.d = (s.head(l).array() / z.head(l).array()).sqrt();
            W.lambda.head(l) = (s.head(l).array() * z.head(l).array()).sqrt();

            W.soc_W.clear();
            W.soc_Winv.clear();
            for (size_t k = 0; k < L.dims.soc.size(); ++k)
            {
                const int q = L.dims.soc[k], o = L.soc_off[k];
                rvec sk = s.segment(o, q), zk = z.segment(o, q);
                double sJs = sk[0] * sk[0] - sk.tail(q - 1).squaredNorm();
                double zJz = zk[0] * zk[0] - zk.tail(q - 1).squaredNorm();
                if (!(sJs > 0.0) || !(zJz > 0.0))
                    return false;
                double sn = std::sqrt(sJs), zn = std::sqrt(zJz);
                rvec sb = sk / sn, zb = zk / zn;
                double gamma = std::sqrt(0.5 * (1.0 + sb.dot(zb)));
                rvec wb(q);
                wb[0] = (sb[0] + zb[0]) / (2.0 * gamma);
                wb.tail(q - 1) = (sb.tail(q - 1) - zb.tail(q - 1)) / (2.0 * gamma);
                rvec v = wb;
                v[0] += 1.0;
                v /= std::sqrt(2.0 * (wb[0] + 1.0));
                double beta = std::sqrt(sn / zn);
                rmat J = rmat::Identity(q, q);
                J.bottomRightCorner(q - 1, q - 1) *= -1.0;
                rmat Wk = beta * (2.0 * v * v.transpose() - J);
                rvec Jv = J * v;
                rmat Wi = (2.0 * Jv * Jv.transpose() - J) / beta;
                W.lambda.segment(o, q) = Wk * zk;
                W.soc_W.push_back(std::move(Wk));
                W.soc_Winv.push_back(std::move(Wi));
            }

            W.R.clear();
            W.Rinv.clear();
            W.psd_lambda.clear();
            for (size_t k = 0; k < L.dims.psd.size(); ++k)
            {
                const int n = L.dims.psd[k], o = L.psd_off[k], m = packed_size(n);
                rmat S = unpack_sym(s.segment(o, m), n), Z = unpack_sym(z.segment(o, m), n);
                Eigen::LLT<rmat> ls(S), lz(Z);
                if (ls.info() != Eigen::Success || lz.info() != Eigen::Success)
                    return false;
                rmat Ls = ls.matrixL(), Lz = lz.matrixL();
                Eigen::JacobiSVD<rmat> svd(Lz.transpose() * Ls, Eigen::ComputeFullU | Eigen::ComputeFullV);
                rvec sig = svd.singularValues();
                if (!(sig.minCoeff() > 0.0))
                    return false;
                rvec isq = sig.cwiseSqrt().cwiseInverse();
                rmat R = Ls * svd.matrixV() * isq.asDiagonal();
                rmat Rinv = sig.cwiseSqrt().asDiagonal() * svd.matrixV().transpose() * Ls.triangularView<Eigen::Lower>().solve(rmat::Identity(n, n));
                W.lambda.segment(o, m) = pack_sym(rmat(sig.asDiagonal()));
                W.psd_lambda.push_back(sig);
                W.R.push_back(std::move(R));
                W.Rinv.push_back(std::move(Rinv));
            }
            return true;
        }

        enum class Op
        {
            W,     // W v
            WT,    // W' v
            Winv,  // W^-1 v
            WinvT  // W^-T v
        };

        rvec apply(const Layout &L, const Scaling &S, Op op, const Eigen::Ref<const rvec> &v)
        {
            rvec out(v.size());
            const int l = L.dims.nonneg;
            if (op == Op::W || op == Op::WT)
                out.head(l) = S.d.cwiseProduct(v.head(l));
            else
                out.head(l) = v.head(l).cwiseQuotient(S.d);
            for (size_t k = 0; k < L.dims.soc.size(); ++k)
            {
                const int q = L.dims.soc[k], o = L.soc_off[k];
                const rmat &M = (op == Op::W || op == Op::WT) ? S.soc_W[k] : S.soc_Winv[k];
                out.segment(o, q) = M * v.segment(o, q);
            }
            for (size_t k = 0; k < L.dims.psd.size(); ++k)
            {
                const int n = L.dims.psd[k], o = L.psd_off[k], m = packed_size(n);
                rmat X = unpack_sym(v.segment(o, m), n);
                rmat Y;
                switch (op)
                {
                case Op::W:
                    Y = S.R[k].transpose() * X * S.R[k];
                    break;
                case Op::WT:
                    Y = S.R[k] * X * S.R[k].transpose();
                    break;
                case Op::Winv:
                    Y = S.Rinv[k].transpose() * X * S.Rinv[k];
                    break;
                case Op::WinvT:
                    Y = S.Rinv[k] * X * S.Rinv[k].transpose();
                    break;
                }
                out.segment(o, m) = pack_sym(Y);
            }
            return out;
        }

        // Solve lambda o x = d for x, lambda being the scaled point
        rvec lambda_divide(const Layout &L, const Scaling &S, const rvec &d)
        {
            rvec x(d.size());
            const int l = L.dims.nonneg;
            const rvec &lam = S.lambda;
            x.head(l) = d.head(l).cwiseQuotient(lam.head(l));
            for (size_t k = 0; k < L.dims.soc.size(); ++k)
            {
                const int q = L.dims.soc[k], o = L.soc_off[k];
                double l0 = lam[o];
                auto l1 = lam.segment(o + 1, q - 1);
                double d0 = d[o];
                auto d1 = d.segment(o + 1, q - 1);
                double det = l0 * l0 - l1.squaredNorm();
                double x0 = (l0 * d0 - l1.dot(d1)) / det;
                x[o] = x0;
                x.segment(o + 1, q - 1) = (d1 - x0 * l1) / l0;
            }
            for (size_t k = 0; k < L.dims.psd.size(); ++k)
            {
                const int n = L.dims.psd[k], o = L.psd_off[k], m = packed_size(n);
                rmat D = unpack_sym(d.segment(o, m), n);
                const rvec &ev = S.psd_lambda[k];
                for (int j = 0; j < n; ++j)
                    for (int i = 0; i < n; ++i)
                        D(i, j) *= 2.0 / (ev[i] + ev[j]);
                x.segment(o, m) = pack_sym(D);
            }
            return x;
        }

        // Largest alpha with lambda + alpha * dir inside the cone (infinity if unbounded)
        double max_step(const Layout &L, const Scaling &S, const rvec &dir)
        {
            const double inf = std::numeric_limits<double>::infinity();
            double amax = inf;
            const rvec &lam = S.lambda;
            for (int i = 0; i < L.dims.nonneg; ++i)
                if (dir[i] < 0.0)
                    amax = std::min(amax, -lam[i] / dir[i]);
            for (size_t k = 0; k < L.dims.soc.size(); ++k)
            {
                const int q = L.dims.soc[k], o = L.soc_off[k];
                double l0 = lam[o], d0 = dir[o];
                auto l1 = lam.segment(o + 1, q - 1);
                auto d1 = dir.segment(o + 1, q - 1);
                // (l0 + a d0)^2 - |l1 + a d1|^2 = qa a^2 + 2 qb a + qc
                double qa = d0 * d0 - d1.squaredNorm();
                double qb = l0 * d0 - l1.dot(d1);
                double qc = l0 * l0 - l1.squaredNorm();
                double root = inf;
                if (qa == 0.0)
                {
                    if (qb < 0.0)
                        root = -qc / (2.0 * qb);
                }
                else
                {
                    double disc = qb * qb - qa * qc;
                    if (disc >= 0.0)
                    {
                        double t = -(qb + std::copysign(std::sqrt(disc), qb));
                        for (double r : {t / qa, t != 0.0 ? qc / t : inf})
                            if (r > 0.0)
                                root = std::min(root, r);
                    }
                }
                // the first root only matters if the cone is left, i.e. the axis stays positive
                if (d0 < 0.0)
                    root = std::min(root, -l0 / d0);
                amax = std::min(amax, root);
            }
            for (size_t k = 0; k < L.dims.psd.size(); ++k)
            {
                const int n = L.dims.psd[k], o = L.psd_off[k], m = packed_size(n);
                rvec isq = S.psd_lambda[k].cwiseSqrt().cwiseInverse();
                rmat D = isq.asDiagonal() * unpack_sym(dir.segment(o, m), n) * isq.asDiagonal();
                double e = Eigen::SelfAdjointEigenSolver<rmat>(D, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
                if (e < 0.0)
                    amax = std::min(amax, -1.0 / e);
            }
            return amax;
        }

        // Factored KKT system [0 A' G'; A 0 0; G 0 -W'W]
        struct KktSolver
        {
            const ConeProgram &p;
            const Layout &L;
            const Scaling &S;
            rmat Gt; // W^-T G
            Eigen::PartialPivLU<rmat> lu;
            Eigen::LDLT<rmat> ldlt;
            bool use_lu = false;
            int n, q;

            KktSolver(const ConeProgram &p_, const Layout &L_, const Scaling &S_) : p(p_), L(L_), S(S_)
            {
                n = int(p.c.size());
                q = int(p.A.rows());
                Gt.resize(p.G.rows(), n);
                for (int j = 0; j < n; ++j)
                    Gt.col(j) = apply(L, S, Op::WinvT, p.G.col(j));
                rmat H = Gt.transpose() * Gt;
                // tiny diagonal regularization keeps the factorization well defined when G
                // is nearly rank deficient; iterative refinement removes its effect
                double reg = 1e-14 * std::max(1.0, H.diagonal().cwiseAbs().maxCoeff());
                if (q == 0)
                {
                    H.diagonal().array() += reg;
                    ldlt.compute(H);
                }
                else
                {
                    rmat M = rmat::Zero(n + q, n + q);
                    M.topLeftCorner(n, n) = H;
                    M.diagonal().head(n).array() += reg;
                    M.topRightCorner(n, q) = p.A.transpose();
                    M.bottomLeftCorner(q, n) = p.A;
                    M.diagonal().tail(q).array() -= reg;
                    lu.compute(M);
                    use_lu = true;
                }
            }

            void solve_once(const rvec &px, const rvec &py, const rvec &pz, rvec &ux, rvec &uy, rvec &uz) const
            {
                rvec wpz = apply(L, S, Op::WinvT, pz);
                rvec rx = px + Gt.transpose() * wpz;
                if (use_lu)
                {
                    rvec rhs(n + q);
                    rhs << rx, py;
                    rvec sol = lu.solve(rhs);
                    ux = sol.head(n);
                    uy = sol.tail(q);
                }
                else
                {
                    ux = ldlt.solve(rx);
                    uy = rvec::Zero(0);
                }
                rvec wz = Gt * ux - wpz;
                uz = apply(L, S, Op::Winv, wz);
            }

            // Solve with two rounds of iterative refinement against the exact system
            void solve(const rvec &px, const rvec &py, const rvec &pz, rvec &ux, rvec &uy, rvec &uz) const
            {
                solve_once(px, py, pz, ux, uy, uz);
                for (int r = 0; r < 2; ++r)
                {
                    rvec ex = px - p.G.transpose() * uz;
                    if (q > 0)
                        ex -= p.A.transpose() * uy;
                    rvec ey = (q > 0) ? rvec(py - p.A * ux) : rvec::Zero(0);
                    rvec Wuz = apply(L, S, Op::W, uz);
                    rvec ez = pz - p.G * ux + apply(L, S, Op::WT, Wuz);
                    rvec cx, cy, cz;
                    solve_once(ex, ey, ez, cx, cy, cz);
                    ux += cx;
                    if (q > 0)
                        uy += cy;
                    uz += cz;
                }
            }
        };
    }

    ConeSolution solve_cone_program(const ConeProgram &p, const ConeOptions &opts)
    {
        const int n = int(p.c.size());
        const int m = p.dims.size();
        const int q = int(p.A.rows());
        if (p.G.rows() != m || p.G.cols() != n || p.h.size() != m)
            throw ConfigError("cone program: G/h do not match the cone dimensions");
        if (q > 0 && (p.A.cols() != n || p.b.size() != q))
            throw ConfigError("cone program: A/b dimensions are inconsistent");
        for (int k : p.dims.soc)
            if (k < 1)
                throw ConfigError("cone program: second-order cones need at least one entry");
        if (!p.c.allFinite() || !p.G.allFinite() || !p.h.allFinite() || (q > 0 && (!p.A.allFinite() || !p.b.allFinite())))
            throw NumericalError("cone program: non-finite data");

        const Layout L(p.dims);
        const rvec e = cone_identity(L);
        const double nu = double(p.dims.degree());
        const rvec b = q > 0 ? p.b : rvec::Zero(0);
        const rmat A = q > 0 ? p.A : rmat::Zero(0, n);

        const double resx0 = std::max(1.0, p.c.norm());
        const double resy0 = std::max(1.0, b.norm());
        const double resz0 = std::max(1.0, p.h.norm());

        ConeSolution sol;
        Scaling S;

        // ----- starting point -----------------------------------------------
        rvec x, y, z, s;
        {
            S.d = rvec::Ones(p.dims.nonneg);
            for (int k : p.dims.soc)
            {
                S.soc_W.push_back(rmat::Identity(k, k));
                S.soc_Winv.push_back(rmat::Identity(k, k));
            }
            for (int k : p.dims.psd)
            {
                S.R.push_back(rmat::Identity(k, k));
                S.Rinv.push_back(rmat::Identity(k, k));
            }
            KktSolver kkt(p, L, S);
            rvec ux, uy, uz;
            kkt.solve(rvec::Zero(n), b, p.h, ux, uy, uz);
            x = ux;
            s = -uz;
            kkt.solve(-p.c, rvec::Zero(q), rvec::Zero(m), ux, uy, uz);
            y = uy;
            z = uz;
            double ts = -min_eigenvalue(L, s);
            double tz = -min_eigenvalue(L, z);
            if (ts >= -1e-8 * std::max(1.0, s.norm()))
                s += (1.0 + ts) * e;
            if (tz >= -1e-8 * std::max(1.0, z.norm()))
                z += (1.0 + tz) * e;
        }
        double tau = 1.0, kappa = 1.0;
        ConeSolution best;
        double best_merit = INFINITY;

        for (int it = 0;; ++it)
        {
            // ----- residuals and stopping tests -----------------------------
            rvec hrx = -A.transpose() * y - p.G.transpose() * z;
            rvec rx = hrx - tau * p.c; // minus the dual residual
            rvec hry = A * x;
            rvec ry = hry - tau * b;
            rvec hrz = s + p.G * x;
            rvec rz = hrz - tau * p.h;
            double cx = p.c.dot(x), by = b.dot(y), hz = p.h.dot(z);
            double rt = kappa + cx + by + hz;
            double gap = s.dot(z);

            double pcost = cx / tau, dcost = -(by + hz) / tau;
            double pres = std::max(ry.norm() / resy0, rz.norm() / resz0) / tau;
            double dres = rx.norm() / resx0 / tau;
            double relgap = gap / (tau * tau) / std::max(1.0, std::min(std::abs(pcost), std::abs(dcost)));
            double pinfres = (hz + by < 0.0) ? hrx.norm() / resx0 / (-hz - by) : INFINITY;
            double dinfres = (cx < 0.0) ? std::max(hry.norm() / resy0, hrz.norm() / resz0) / (-cx) : INFINITY;

            auto snapshot = [&](ConeSolution::Status st)
            {
                ConeSolution out;
                out.status = st;
                out.x = x / tau;
                out.s = s / tau;
                out.y = y / tau;
                out.z = z / tau;
                out.primal_obj = pcost;
                out.dual_obj = dcost;
                out.gap = gap / (tau * tau);
                out.pres = pres;
                out.dres = dres;
                out.iterations = it;
                return out;
            };
            // numerical breakdown near the optimum: fall back on the best iterate seen
            auto fallback = [&]() -> bool
            { return best_merit <= opts.fallback_tol; };

            const bool finite = std::isfinite(pcost) && std::isfinite(dcost) && std::isfinite(gap) &&
                                std::isfinite(pres) && std::isfinite(dres);
            if (!finite)
            {
                if (fallback())
                    return best;
                throw NumericalError("cone program: iterate became non-finite");
            }

            const double merit = std::max({pres, dres, relgap});
            if (merit < best_merit)
            {
                best_merit = merit;
                best = snapshot(ConeSolution::Status::optimal);
                best.reduced_accuracy = true;
            }
            if (pres <= opts.tol && dres <= opts.tol && relgap <= opts.tol)
                return snapshot(ConeSolution::Status::optimal);
            if (pinfres <= opts.tol)
            {
                sol.status = ConeSolution::Status::primal_infeasible;
                sol.y = y / (-hz - by);
                sol.z = z / (-hz - by);
                sol.x = x;
                sol.s = s;
                sol.pres = pinfres;
                sol.iterations = it;
                return sol;
            }
            if (dinfres <= opts.tol)
            {
                sol.status = ConeSolution::Status::dual_infeasible;
                sol.x = x / (-cx);
                sol.s = s / (-cx);
                sol.y = y;
                sol.z = z;
                sol.dres = dinfres;
                sol.iterations = it;
                return sol;
            }
            if (fallback() && merit > 1e3 * best_merit)
                return best;
            if (it >= opts.max_iter)
                return fallback() ? best : snapshot(ConeSolution::Status::max_iter);

            // ----- Newton step ------------------------------------------------
            if (!compute_scaling(L, s, z, S))
            {
                if (fallback())
                    return best;
                throw NumericalError("cone program: lost interiority");
            }
            KktSolver kkt(p, L, S);
            const rvec &lam = S.lambda;
            double mu = (gap + tau * kappa) / (nu + 1.0);

            rvec x1, y1, z1;
            kkt.solve(-p.c, b, p.h, x1, y1, z1);

            rvec lam_sq = circ(L, lam, lam);
            rvec dsa, dza; // scaled affine directions, used by the corrector
            double dtaua = 0.0, dkappaa = 0.0;
            rvec dx, dy, dz, ds;
            double dtau = 0.0, dkappa = 0.0;

            double sigma = 0.0;
            for (int phase = 0; phase < 2; ++phase)
            {
                double eta = phase == 0 ? 0.0 : sigma;
                rvec d_s = -lam_sq + sigma * mu * e;
                double d_k = -tau * kappa + sigma * mu;
                if (phase == 1)
                {
                    d_s -= circ(L, dsa, dza);
                    d_k -= dtaua * dkappaa;
                }
                rvec ls = lambda_divide(L, S, d_s);
                // linearized residual equations, with rx = -(A'y + G'z + c tau), ry = A x - b tau
                rvec bx = (1.0 - eta) * rx;
                rvec byv = -(1.0 - eta) * ry;
                rvec bz = -(1.0 - eta) * rz - apply(L, S, Op::WT, ls);
                rvec x2, y2, z2;
                kkt.solve(bx, byv, bz, x2, y2, z2);
                double num = -(1.0 - eta) * rt - d_k / tau - p.c.dot(x2) - b.dot(y2) - p.h.dot(z2);
                dtau = num / (p.c.dot(x1) + b.dot(y1) + p.h.dot(z1) - kappa / tau);
                dx = x2 + dtau * x1;
                dy = y2 + dtau * y1;
                dz = z2 + dtau * z1;
                rvec dzs = apply(L, S, Op::W, dz);
                rvec dss = ls - dzs;
                ds = apply(L, S, Op::WT, dss);
                dkappa = (d_k - kappa * dtau) / tau;

                double amax = std::min(max_step(L, S, dss), max_step(L, S, dzs));
                if (dtau < 0.0)
                    amax = std::min(amax, -tau / dtau);
                if (dkappa < 0.0)
                    amax = std::min(amax, -kappa / dkappa);

                if (phase == 0)
                {
                    double alpha = std::min(1.0, amax);
                    sigma = std::pow(1.0 - alpha, 3);
                    dsa = dss;
                    dza = dzs;
                    dtaua = dtau;
                    dkappaa = dkappa;
                }
                else
                {
                    double alpha = std::min(1.0, 0.99 * amax);
                    // the step bound is computed in the scaled space; backtrack when round-off
                    // puts the unscaled iterate on the cone boundary
                    Scaling trial;
                    for (int bt = 0; bt < 30 && !compute_scaling(L, s + alpha * ds, z + alpha * dz, trial); ++bt)
                        alpha *= 0.5;
                    x += alpha * dx;
                    y += alpha * dy;
                    z += alpha * dz;
                    s += alpha * ds;
                    tau += alpha * dtau;
                    kappa += alpha * dkappa;
                }
            }
        }
    }
}
