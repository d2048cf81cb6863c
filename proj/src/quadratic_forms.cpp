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

#include "dfrc/quadratic_forms.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace dfrc
{
    StackedBeamformer::StackedBeamformer(cvec u_, int n_users_, int n_tx_)
        : u(std::move(u_)), n_users(n_users_), n_tx(n_tx_)
    {
        if (u.size() != std::ptrdiff_t(n_users) * n_tx)
            throw ConfigError("stacked beamformer length must equal n_users * n_tx");
    }

    StackedBeamformer StackedBeamformer::zeros(int n_users, int n_tx)
    {
        return StackedBeamformer(cvec::Zero(std::ptrdiff_t(n_users) * n_tx), n_users, n_tx);
    }

    namespace
    {
        // I_K (x) M
        cmat block_diag(int K, const cmat &M)
        {
            const auto n = M.rows();
            cmat out = cmat::Zero(K * n, K * n);
            for (int k = 0; k < K; ++k)
                out.block(k * n, k * n, n, n) = M;
            return out;
        }

        // Transmit-side form A(theta)^H w w^H A(theta) = |a_r^H w|^2 a_t a_t^H
        cmat tx_form(const ArrayGeometry &geom, Angle theta, const cvec &w)
        {
            cvec at = tx_steering(geom, theta);
            double g = std::norm(rx_steering(geom, theta).dot(w));
            return g * (at * at.adjoint());
        }
    }

    QuadraticFormSet build_forms(const cvec &w, const ChannelSet &channels, const ScenarioConfig &config)
    {
        const auto &geom = config.geometry;
        const int K = config.n_users();
        const int nt = geom.n_tx;
        if (w.size() != geom.n_rx)
            throw ConfigError("receive beamformer length does not match n_rx");
        if (int(channels.h.size()) != K)
            throw ConfigError("channel set does not match the number of users");
        for (const auto &h : channels.h)
            if (h.size() != nt)
                throw ConfigError("channel length does not match n_tx");

        QuadraticFormSet f;
        f.p_max = config.p_max();
        f.sigma_r = config.sigma_r();
        f.noise = config.noise_power();

        for (int i = 0; i < config.n_targets(); ++i)
        {
            f.target_tx.push_back(tx_form(geom, config.target_angles[i], w));
            f.target_stacked.push_back(block_diag(K, config.target_gain_of(i) * f.target_tx.back()));
        }

        f.clutter_tx = cmat::Zero(nt, nt);
        for (const auto &c : config.clutters)
            f.clutter_tx += c.gain * tx_form(geom, c.angle, w);

        double white = config.stacked_noise == StackedNoise::radar_noise ? f.sigma_r / f.p_max : double(geom.n_rx) / f.p_max;
        f.clutter_stacked = block_diag(K, f.clutter_tx);
        f.clutter_stacked.diagonal().array() += white;

        const int dim = K * nt;
        for (int k = 0; k < K; ++k)
        {
            cmat hh = channels.h[k] * channels.h[k].adjoint();
            cmat s = cmat::Zero(dim, dim);
            s.block(k * nt, k * nt, nt, nt) = hh;
            cmat q = block_diag(K, hh);
            q.block(k * nt, k * nt, nt, nt).setZero();
            q.diagonal().array() += f.noise / f.p_max;
            f.signal_stacked.push_back(std::move(s));
            f.interf_stacked.push_back(std::move(q));
        }

        for (const auto &T : f.target_stacked)
            f.target_stacked_sqrt.push_back(psd_sqrt(T));
        f.clutter_stacked_sqrt = psd_sqrt(f.clutter_stacked);
        return f;
    }

    cmat echo_matrix(const ArrayGeometry &geom, Angle theta, const cvec &u_k)
    {
        cvec ar = rx_steering(geom, theta);
        double g = std::norm(tx_steering(geom, theta).dot(u_k));
        return g * (ar * ar.adjoint());
    }

    double sinr(int k, const StackedBeamformer &u, const ChannelSet &channels, const ScenarioConfig &config)
    {
        if (k < 0 || k >= u.n_users)
            throw ConfigError("user index out of range");
        const cvec &h = channels.h.at(k);
        double signal = std::norm(h.dot(u.block(k)));
        double interference = 0.0;
        for (int i = 0; i < u.n_users; ++i)
            if (i != k)
                interference += std::norm(h.dot(u.block(i)));
        return signal / (interference + config.noise_power());
    }

    std::vector<double> sinr_all(const StackedBeamformer &u, const ChannelSet &channels, const ScenarioConfig &config)
    {
        std::vector<double> out;
        for (int k = 0; k < u.n_users; ++k)
            out.push_back(sinr(k, u, channels, config));
        return out;
    }

    namespace
    {
        // sum_k |w^H A(theta) u_k|^2
        double echo_power(const ArrayGeometry &geom, Angle theta, const StackedBeamformer &u, const cvec &w)
        {
            double rx = std::norm(w.dot(rx_steering(geom, theta)));
            cvec at = tx_steering(geom, theta);
            double tx = 0.0;
            for (int k = 0; k < u.n_users; ++k)
                tx += std::norm(at.dot(u.block(k)));
            return rx * tx;
        }
    }

    double scnr(int i, const StackedBeamformer &u, const cvec &w, const ScenarioConfig &config)
    {
        const auto &geom = config.geometry;
        double num = config.target_gain_of(i) * echo_power(geom, config.target_angles.at(i), u, w);
        double den = config.sigma_r() * w.squaredNorm();
        for (const auto &c : config.clutters)
            den += c.gain * echo_power(geom, c.angle, u, w);
        return num / den;
    }

    double worst_case_scnr(const StackedBeamformer &u, const cvec &w, const ScenarioConfig &config)
    {
        double best = INFINITY;
        for (int i = 0; i < config.n_targets(); ++i)
            best = std::min(best, scnr(i, u, w, config));
        return best;
    }

    cmat psd_sqrt(const cmat &M)
    {
        if (M.rows() != M.cols())
            throw ConfigError("psd_sqrt needs a square matrix");
        if (!M.allFinite())
            throw NumericalError("psd_sqrt: non-finite input");
        Eigen::SelfAdjointEigenSolver<cmat> es(herm(M));
        rvec ev = es.eigenvalues();
        double top = std::max(0.0, ev.maxCoeff());
        if (ev.minCoeff() < -1e-9 * top - 1e-300)
            throw NumericalError("psd_sqrt: matrix is not positive semidefinite");
        rvec root = ev.cwiseMax(0.0).cwiseSqrt();
        cmat S = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
        return herm(S);
    }

    namespace
    {
        cmat alignment_operator(const QuadraticFormSet &forms, int i, const cmat &Q, double lambda)
        {
            return forms.target_stacked_sqrt[i] - std::sqrt(lambda) * Q * forms.clutter_stacked_sqrt;
        }
    }

    SurrogatePair build_surrogate_R(const QuadraticFormSet &forms, const std::vector<cmat> &Q, const std::vector<double> &lambda)
    {
        const int I = forms.n_targets();
        if (int(Q.size()) != I || int(lambda.size()) != I)
            throw ConfigError("alignment matrices and rates must have one entry per candidate");
        SurrogatePair sp;
        sp.R = cmat::Zero(forms.dim(), forms.dim());
        for (int i = 0; i < I; ++i)
        {
            if (lambda[i] < 0.0)
                throw NumericalError("rates must be non-negative");
            cmat M = alignment_operator(forms, i, Q[i], lambda[i]);
            sp.R += M.adjoint() * M;
        }
        sp.R = herm(sp.R);
        double top = Eigen::SelfAdjointEigenSolver<cmat>(sp.R, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
        sp.mu = top * (1.0 + 1e-6) + 1e-12;
        sp.R_hat = -sp.R;
        sp.R_hat.diagonal().array() += sp.mu;
        return sp;
    }

    std::vector<double> alignment_residuals(const cvec &u, const QuadraticFormSet &forms, const std::vector<cmat> &Q,
                                            const std::vector<double> &lambda)
    {
        std::vector<double> out;
        cvec cu = forms.clutter_stacked_sqrt * u;
        for (int i = 0; i < forms.n_targets(); ++i)
            out.push_back((forms.target_stacked_sqrt[i] * u - std::sqrt(lambda[i]) * (Q[i] * cu)).squaredNorm());
        return out;
    }

    double chi_objective(const cvec &u, const std::vector<cmat> &Q, const std::vector<double> &lambda,
                         const QuadraticFormSet &forms, double eta)
    {
        double penalty = 0.0;
        for (double r : alignment_residuals(u, forms, Q, lambda))
            penalty += r;
        return *std::min_element(lambda.begin(), lambda.end()) - eta * penalty;
    }

    std::vector<double> target_amplitudes(const cvec &u, const QuadraticFormSet &forms)
    {
        std::vector<double> x;
        for (const auto &S : forms.target_stacked_sqrt)
            x.push_back((S * u).norm());
        return x;
    }

    double clutter_amplitude(const cvec &u, const QuadraticFormSet &forms)
    {
        return (forms.clutter_stacked_sqrt * u).norm();
    }
}
