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

#include "dfrc/receive_opt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>

#include "dfrc/convex_core.hpp"

namespace dfrc
{
    FractionalInstance build_fractional(const StackedBeamformer &u, const ScenarioConfig &config)
    {
        const auto &geom = config.geometry;
        const double sr = config.sigma_r();
        const int nr = geom.n_rx;
        if (!(u.u.norm() > 0.0))
            throw NumericalError("transmit beamformer is zero");

        auto echo_sum = [&](Angle theta)
        {
            cmat B = cmat::Zero(nr, nr);
            for (int k = 0; k < u.n_users; ++k)
                B += echo_matrix(geom, theta, u.block(k));
            return B;
        };

        FractionalInstance inst;
        for (int i = 0; i < config.n_targets(); ++i)
            inst.N.push_back(herm(config.target_gain_of(i) / sr * echo_sum(config.target_angles[i])));
        inst.D = cmat::Identity(nr, nr);
        for (const auto &c : config.clutters)
            inst.D += c.gain / sr * echo_sum(c.angle);
        inst.D = herm(inst.D);
        return inst;
    }

    std::vector<double> ratios(const cvec &w, const FractionalInstance &inst)
    {
        double den = w.dot(inst.D * w).real();
        std::vector<double> out;
        for (const auto &N : inst.N)
            out.push_back(w.dot(N * w).real() / den);
        return out;
    }

    double min_ratio(const cvec &w, const FractionalInstance &inst)
    {
        auto r = ratios(w, inst);
        return *std::min_element(r.begin(), r.end());
    }

    double toeplitz_defect(const cmat &M)
    {
        const auto n = M.rows();
        double defect = (M - M.adjoint()).cwiseAbs().maxCoeff();
        for (Eigen::Index i = 1; i < n; ++i)
            for (Eigen::Index j = 1; j < n; ++j)
                defect = std::max(defect, std::abs(M(i, j) - M(i - 1, j - 1)));
        return defect;
    }

    cvec normalize_phase(const cvec &w)
    {
        Eigen::Index idx = 0;
        w.cwiseAbs().maxCoeff(&idx);
        cplx ph = w[idx] / std::abs(w[idx]);
        cvec out = w / (ph * w.norm());
        out[idx] = std::abs(out[idx]);
        return out;
    }

    namespace
    {
        double relaxed_ratio(const cmat &W, const FractionalInstance &inst)
        {
            double den = (W * inst.D).trace().real();
            double v = INFINITY;
            for (const auto &N : inst.N)
                v = std::min(v, (W * N).trace().real() / den);
            return v;
        }

        bool is_toeplitz(const FractionalInstance &inst)
        {
            double scale = inst.D.norm();
            bool ok = toeplitz_defect(inst.D) <= 1e-10 * scale;
            for (const auto &N : inst.N)
                ok = ok && toeplitz_defect(N) <= 1e-10 * std::max(scale, N.norm());
            return ok;
        }

        // Polynomial coefficients (ascending powers) with the given roots
        cvec poly_from_roots(const std::vector<cplx> &roots)
        {
            cvec c = cvec::Zero(Eigen::Index(roots.size()) + 1);
            c[0] = 1.0;
            int deg = 0;
            for (const cplx &z : roots)
            {
                for (int j = deg + 1; j >= 1; --j)
                    c[j] = c[j - 1] - z * c[j];
                c[0] = -z * c[0];
                ++deg;
            }
            return c;
        }

        cplx poly_eval(const cvec &c, cplx z)
        {
            cplx v = 0.0;
            for (Eigen::Index j = c.size() - 1; j >= 0; --j)
                v = v * z + c[j];
            return v;
        }

        std::vector<cplx> poly_roots(const cvec &c)
        {
            const int d = int(c.size()) - 1;
            std::vector<cplx> roots;
            if (d < 1)
                return roots;
            cmat comp = cmat::Zero(d, d);
            for (int j = 0; j < d; ++j)
                comp(0, j) = -c[d - 1 - j] / c[d];
            for (int j = 1; j < d; ++j)
                comp(j, j - 1) = 1.0;
            Eigen::ComplexEigenSolver<cmat> es(comp, false);
            cvec dc(d);
            for (int j = 0; j < d; ++j)
                dc[j] = double(j + 1) * c[j + 1];
            for (int j = 0; j < d; ++j)
            {
                cplx z = es.eigenvalues()[j];
                // Newton polish; skipped when the derivative vanishes (multiple roots)
                for (int it = 0; it < 3; ++it)
                {
                    cplx dv = poly_eval(dc, z);
                    if (std::abs(dv) < 1e-300)
                        break;
                    cplx step = poly_eval(c, z) / dv;
                    if (!std::isfinite(step.real()) || std::abs(step) > 1e-3 * std::max(1.0, std::abs(z)))
                        break;
                    z -= step;
                }
                roots.push_back(z);
            }
            return roots;
        }

        // Vector with the same diagonal sums (autocorrelation) as W. `paired` merges roots that
        // sit on the unit circle, where a double root may split along the circle.
        cvec spectral_factor(const cmat &W, bool paired)
        {
            const int n = int(W.rows());
            if (n == 1)
                return cvec::Ones(1);
            cvec r(n);
            for (int k = 0; k < n; ++k)
                r[k] = W.diagonal(-k).sum();
            // z^(n-1) times the autocorrelation polynomial
            cvec p(2 * n - 1);
            for (int j = 0; j < 2 * n - 1; ++j)
                p[j] = (j >= n - 1) ? r[j - n + 1] : std::conj(r[n - 1 - j]);
            const double tiny = 1e-13 * std::abs(r[0]);
            int m = 0;
            while (m < n - 1 && std::abs(p[2 * n - 2 - m]) <= tiny)
                ++m;
            cvec core = p.segment(m, 2 * n - 1 - 2 * m);
            std::vector<cplx> roots = poly_roots(core);

            std::vector<cplx> chosen(m, cplx(0.0)); // roots at zero pair with roots at infinity
            const int need = n - 1 - m;
            if (!paired)
            {
                std::sort(roots.begin(), roots.end(), [](cplx a, cplx b)
                          { return std::abs(a) < std::abs(b); });
                chosen.insert(chosen.end(), roots.begin(), roots.begin() + need);
            }
            else
            {
                std::vector<cplx> circle, inside;
                for (cplx z : roots)
                {
                    double mod = std::abs(z);
                    if (std::abs(mod - 1.0) < 1e-4)
                        circle.push_back(z);
                    else if (mod < 1.0)
                        inside.push_back(z);
                }
                std::sort(circle.begin(), circle.end(), [](cplx a, cplx b)
                          { return std::arg(a) < std::arg(b); });
                // neighbours in angle belong to the same split double root; the first and
                // last entries may wrap around -pi
                if (circle.size() % 2 == 0 && circle.size() >= 2 &&
                    std::abs(circle.front() - circle.back()) < std::abs(circle[0] - circle[1]))
                    std::rotate(circle.begin(), circle.begin() + 1, circle.end());
                chosen.insert(chosen.end(), inside.begin(), inside.end());
                for (size_t j = 0; j + 1 < circle.size(); j += 2)
                {
                    cplx mid = 0.5 * (circle[j] + circle[j + 1]);
                    chosen.push_back(mid / std::abs(mid));
                }
                if (int(chosen.size()) != n - 1)
                    return cvec();
            }
            cvec w = poly_from_roots(chosen);
            double nrm = w.norm();
            if (!(nrm > 0.0) || !w.allFinite())
                return cvec();
            return w / nrm;
        }

        // Derivative-free hill climbing on the min ratio; never decreases the value
        cvec local_ascent(cvec w, const FractionalInstance &inst, std::uint64_t seed, int steps)
        {
            GaussianSource rng(seed ^ 0x5eedULL);
            double best = min_ratio(w, inst);
            double radius = 0.1;
            for (int it = 0; it < steps && radius > 1e-9; ++it)
            {
                cvec cand = w;
                for (Eigen::Index j = 0; j < cand.size(); ++j)
                    cand[j] += radius * rng.complex_normal();
                cand.normalize();
                double v = min_ratio(cand, inst);
                if (v > best)
                {
                    best = v;
                    w = cand;
                    radius *= 1.5;
                }
                else
                    radius *= 0.85;
            }
            return w;
        }
    }

    RankOneResult extract_rank_one(const cmat &W, const FractionalInstance &inst, std::uint64_t seed)
    {
        const int n = int(W.rows());
        if (W.cols() != n || inst.D.rows() != n)
            throw ConfigError("relaxation and instance sizes differ");
        RankOneResult res;
        res.relaxed_value = relaxed_ratio(W, inst);
        const double target = res.relaxed_value - 1e-6 * std::abs(res.relaxed_value);

        auto accept = [&](const cvec &w)
        {
            if (w.size() != n || !w.allFinite())
                return false;
            double v = min_ratio(w, inst);
            if (res.w.size() == 0 || v > res.value)
            {
                res.w = normalize_phase(w);
                res.value = min_ratio(res.w, inst);
            }
            return res.value >= target;
        };

        Eigen::SelfAdjointEigenSolver<cmat> es(herm(W));
        const rvec ev = es.eigenvalues();
        if (accept(es.eigenvectors().col(n - 1)) && (n == 1 || ev[n - 2] <= 1e-6 * ev[n - 1]))
            return res;
        if (res.value >= target)
            return res;

        if (is_toeplitz(inst))
        {
            if (accept(spectral_factor(W, false)))
                return res;
            if (accept(spectral_factor(W, true)))
                return res;
        }

        // Gaussian randomization around the relaxation
        res.randomized = true;
        cmat S = psd_sqrt(herm(W));
        GaussianSource rng(seed);
        for (int d = 0; d < 500; ++d)
        {
            cvec g(n);
            for (int j = 0; j < n; ++j)
                g[j] = rng.complex_normal();
            cvec xi = S * g;
            if (xi.norm() > 0.0)
                accept(xi.normalized());
        }
        accept(local_ascent(res.w, inst, seed, 2000));
        res.degraded = res.value < target;
        return res;
    }

    DinkelbachResult dinkelbach_solve(const FractionalInstance &inst, const SolverOptions &opts, const std::optional<cvec> &w_init)
    {
        const int n = int(inst.D.rows());
        if (inst.N.empty())
            throw ConfigError("fractional program needs at least one numerator");
        for (const auto &N : inst.N)
            if (N.rows() != n || N.cols() != n)
                throw ConfigError("fractional program matrices must share one size");
        Eigen::LLT<cmat> llt(inst.D);
        if (llt.info() != Eigen::Success)
            throw NumericalError("denominator matrix must be positive definite");

        DinkelbachResult res;
        res.w = w_init ? normalize_phase(*w_init) : cvec(cvec::Ones(n) / std::sqrt(double(n)));
        if (res.w.size() != n)
            throw ConfigError("initial combiner has the wrong length");
        res.value = min_ratio(res.w, inst);
        double rate = res.value;

        // whitened coordinates: with D = L L^H and W = L^-H V L^-1 the denominator becomes tr V,
        // which keeps the subproblems well scaled when D carries strong clutter directions
        const cmat L = llt.matrixL();
        const cmat Linv = L.triangularView<Eigen::Lower>().solve(cmat::Identity(n, n));
        std::vector<cmat> Nw;
        for (const auto &N : inst.N)
            Nw.push_back(herm(Linv * N * Linv.adjoint()));

        cmat W_best;
        for (int it = 0; it < 100; ++it)
        {
            SpectrahedronMinMax sp;
            for (const auto &N : Nw)
                sp.M.push_back(N - rate * cmat::Identity(n, n));
            auto r = solve_spectrahedron_minmax(sp, opts);
            r.W = herm(Linv.adjoint() * r.W * Linv);
            r.W /= r.W.trace().real();
            res.rate_trace.push_back(rate);
            res.iterations = it + 1;
            double next = relaxed_ratio(r.W, inst);
            if (!(next > rate * (1.0 + opts.dinkelbach_tol)) || r.t <= 0.0)
            {
                if (next > rate)
                {
                    rate = next;
                    W_best = r.W;
                }
                break;
            }
            rate = next;
            W_best = r.W;
        }
        res.relaxed_value = std::max(rate, res.value);

        if (W_best.size() > 0)
        {
            auto ext = extract_rank_one(W_best, inst, 0);
            if (ext.value > res.value)
            {
                res.w = ext.w;
                res.value = ext.value;
            }
        }
        res.degraded = res.value < res.relaxed_value * (1.0 - 1e-6);
        return res;
    }

    OracleResult generalized_eigen_oracle(const cmat &N, const cmat &D)
    {
        Eigen::LLT<cmat> llt(D);
        if (llt.info() != Eigen::Success)
            throw NumericalError("denominator matrix must be positive definite");
        cmat L = llt.matrixL();
        cmat Li = L.triangularView<Eigen::Lower>().solve(cmat::Identity(D.rows(), D.cols()));
        Eigen::SelfAdjointEigenSolver<cmat> es(herm(Li * N * Li.adjoint()));
        const auto n = D.rows();
        OracleResult res;
        res.w = normalize_phase(Li.adjoint() * es.eigenvectors().col(n - 1));
        res.value = es.eigenvalues()[n - 1];
        res.grid_value = res.value;
        return res;
    }

    OracleResult sphere_grid_oracle(const FractionalInstance &inst, int resolution)
    {
        const int n = int(inst.D.rows());
        if (n > 3)
            throw ConfigError("grid oracle supports at most three receive elements");
        if (resolution < 2)
            throw ConfigError("grid oracle resolution must be at least 2");

        // phase-normalized parameterization: magnitudes on the positive orthant of the sphere
        auto make = [n](const std::vector<double> &p)
        {
            cvec w(n);
            if (n == 1)
                w[0] = 1.0;
            else if (n == 2)
            {
                w[0] = std::cos(p[0]);
                w[1] = std::polar(std::sin(p[0]), p[1]);
            }
            else
            {
                w[0] = std::cos(p[0]);
                w[1] = std::polar(std::sin(p[0]) * std::cos(p[1]), p[2]);
                w[2] = std::polar(std::sin(p[0]) * std::sin(p[1]), p[3]);
            }
            return w;
        };
        const int dims = n == 1 ? 0 : (n == 2 ? 2 : 4);
        std::vector<double> span(dims);
        if (n == 2)
            span = {0.5 * pi, 2.0 * pi};
        else if (n == 3)
            span = {0.5 * pi, 0.5 * pi, 2.0 * pi, 2.0 * pi};

        // keep the few best grid points as refinement seeds
        const size_t keep = 10;
        std::vector<std::pair<double, std::vector<double>>> top;
        std::vector<double> p(dims);
        std::function<void(int)> sweep = [&](int d)
        {
            if (d == dims)
            {
                double v = min_ratio(make(p), inst);
                if (top.size() < keep || v > top.back().first)
                {
                    top.emplace_back(v, p);
                    std::sort(top.begin(), top.end(), [](const auto &a, const auto &b)
                              { return a.first > b.first; });
                    if (top.size() > keep)
                        top.pop_back();
                }
                return;
            }
            // angles with period 2 pi exclude the duplicate endpoint
            const bool periodic = span[d] > pi;
            const int cnt = resolution;
            for (int j = 0; j < cnt; ++j)
            {
                p[d] = span[d] * double(j) / double(periodic ? cnt : cnt - 1);
                sweep(d + 1);
            }
        };
        sweep(0);

        // pattern directions {-1, 0, 1}^dims without zero; diagonal moves let the search follow
        // the ridge where two ratios tie, which coordinate moves alone cannot
        std::vector<std::vector<int>> dirs;
        std::vector<int> dv(dims, -1);
        while (dims > 0)
        {
            if (std::any_of(dv.begin(), dv.end(), [](int x) { return x != 0; }))
                dirs.push_back(dv);
            int d = 0;
            while (d < dims && dv[d] == 1)
                dv[d++] = -1;
            if (d == dims)
                break;
            ++dv[d];
        }

        GaussianSource rng(0x5eed);
        OracleResult res;
        res.grid_value = top.front().first;
        res.value = -INFINITY;
        for (auto [v, q] : top)
        {
            std::vector<double> step(dims);
            for (int d = 0; d < dims; ++d)
                step[d] = span[d] / double(resolution);
            bool any = dims > 0;
            while (any)
            {
                bool moved = false;
                for (const auto &dir : dirs)
                {
                    auto c = q;
                    for (int d = 0; d < dims; ++d)
                        c[d] += dir[d] * step[d];
                    double cv = min_ratio(make(c), inst);
                    if (cv > v)
                    {
                        v = cv;
                        q = c;
                        moved = true;
                    }
                }
                // random directions before shrinking, for ridges where three ratios tie
                for (int t = 0; t < 256 && !moved; ++t)
                {
                    auto c = q;
                    for (int d = 0; d < dims; ++d)
                        c[d] += step[d] * rng.normal();
                    double cv = min_ratio(make(c), inst);
                    if (cv > v)
                    {
                        v = cv;
                        q = c;
                        moved = true;
                    }
                }
                if (!moved)
                {
                    any = false;
                    for (auto &s : step)
                    {
                        s *= 0.7;
                        any = any || s > 1e-12;
                    }
                }
            }
            if (v > res.value)
            {
                res.value = v;
                res.w = normalize_phase(make(q));
            }
        }
        return res;
    }
}
