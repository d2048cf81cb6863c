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

#ifndef DFRC_QUADRATIC_FORMS_H
#define DFRC_QUADRATIC_FORMS_H

#include <vector>

#include "dfrc/scenario.hpp"
#include "dfrc/types.hpp"

namespace dfrc
{
    // All user beamformers stacked into one vector; user k owns entries [k*n_tx, (k+1)*n_tx)
    struct StackedBeamformer
    {
        cvec u;
        int n_users = 0;
        int n_tx = 0;

        StackedBeamformer() = default;
        StackedBeamformer(cvec u_, int n_users_, int n_tx_);
        static StackedBeamformer zeros(int n_users, int n_tx);

        auto block(int k) { return u.segment(std::ptrdiff_t(k) * n_tx, n_tx); }
        auto block(int k) const { return u.segment(std::ptrdiff_t(k) * n_tx, n_tx); }
        double power() const { return u.squaredNorm(); }
    };

    // Every matrix the transmit step works with, for one fixed receive combiner w.
    // Stacked forms act on the K*n_tx vector u.
    struct QuadraticFormSet
    {
        std::vector<cmat> target_tx;          // A(theta_i)^H w w^H A(theta_i), n_tx x n_tx
        cmat clutter_tx;                      // sum_j |alpha_j|^2 A(theta_j)^H w w^H A(theta_j)
        std::vector<cmat> target_stacked;     // I_K (x) |alpha_i|^2 target_tx[i]
        cmat clutter_stacked;                 // I_K (x) clutter_tx + (white level) I
        std::vector<cmat> signal_stacked;     // diag(e_k) (x) h_k h_k^H
        std::vector<cmat> interf_stacked;     // (I - diag(e_k)) (x) h_k h_k^H + (N0 / P) I
        std::vector<cmat> target_stacked_sqrt; // Hermitian square roots, cached
        cmat clutter_stacked_sqrt;
        double p_max = 1.0;
        double sigma_r = 1.0;
        double noise = 1.0;

        int n_targets() const { return int(target_stacked.size()); }
        int n_users() const { return int(signal_stacked.size()); }
        int dim() const { return int(clutter_stacked.rows()); }
    };

    QuadraticFormSet build_forms(const cvec &w, const ChannelSet &channels, const ScenarioConfig &config);

    // Echo covariance of user k's stream from direction theta at the receive array:
    // |a_t(theta)^H u_k|^2 a_r(theta) a_r(theta)^H (Hermitian Toeplitz)
    cmat echo_matrix(const ArrayGeometry &geom, Angle theta, const cvec &u_k);

    // Per-user SINR with the downlink noise floor of the config
    double sinr(int k, const StackedBeamformer &u, const ChannelSet &channels, const ScenarioConfig &config);
    std::vector<double> sinr_all(const StackedBeamformer &u, const ChannelSet &channels, const ScenarioConfig &config);

    // Symbol-averaged SCNR toward candidate i, and its minimum over candidates
    double scnr(int i, const StackedBeamformer &u, const cvec &w, const ScenarioConfig &config);
    double worst_case_scnr(const StackedBeamformer &u, const cvec &w, const ScenarioConfig &config);

    // Hermitian square root by eigen-decomposition; small negative eigenvalues
    // (above -1e-9 * lambda_max) are clamped to zero, larger ones throw NumericalError
    cmat psd_sqrt(const cmat &M);

    // Quadratic penalty matrix R (u^H R u equals the alignment penalty sum) and its
    // PSD complement R_hat = mu I - R
    struct SurrogatePair
    {
        cmat R;
        cmat R_hat;
        double mu = 0.0;
    };

    SurrogatePair build_surrogate_R(const QuadraticFormSet &forms, const std::vector<cmat> &Q, const std::vector<double> &lambda);

    // Alignment residuals ||T_i^(1/2) u - sqrt(lambda_i) Q_i C^(1/2) u||^2, one per candidate
    std::vector<double> alignment_residuals(const cvec &u, const QuadraticFormSet &forms, const std::vector<cmat> &Q,
                                            const std::vector<double> &lambda);

    // Penalized objective min_i lambda_i - eta * sum of alignment residuals. eta is the
    // weight in the units of the forms (see transmit_opt.hpp for the noise scaling).
    double chi_objective(const cvec &u, const std::vector<cmat> &Q, const std::vector<double> &lambda,
                         const QuadraticFormSet &forms, double eta);

    // Target and clutter amplitudes seen through the forms: x_i = ||T_i^(1/2) u||, y = ||C^(1/2) u||
    std::vector<double> target_amplitudes(const cvec &u, const QuadraticFormSet &forms);
    double clutter_amplitude(const cvec &u, const QuadraticFormSet &forms);
}

#endif
