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

#ifndef DFRC_RECEIVE_OPT_H
#define DFRC_RECEIVE_OPT_H

#include <optional>
#include <vector>

#include "dfrc/quadratic_forms.hpp"
#include "dfrc/scenario.hpp"
#include "dfrc/types.hpp"

namespace dfrc
{
    // max over unit w of min_i (w^H N_i w) / (w^H D w). Built from the transmit beamformers
    // with every matrix divided by the radar noise power, so D = clutter + I and the ratios
    // are the SCNR values themselves.
    struct FractionalInstance
    {
        std::vector<cmat> N;
        cmat D;
    };

    FractionalInstance build_fractional(const StackedBeamformer &u, const ScenarioConfig &config);

    double min_ratio(const cvec &w, const FractionalInstance &inst);
    std::vector<double> ratios(const cvec &w, const FractionalInstance &inst);

    // Largest deviation from Hermitian Toeplitz structure (0 for exact Toeplitz)
    double toeplitz_defect(const cmat &M);

    struct DinkelbachResult
    {
        cvec w;
        double value = 0.0;         // achieved min ratio of w
        double relaxed_value = 0.0; // value certified by the matrix relaxation
        bool degraded = false;      // rank-one extraction lost more than 1e-6 relative
        int iterations = 0;
        std::vector<double> rate_trace; // Dinkelbach parameter per iteration, strictly increasing
    };

    // Globally optimal combiner through Dinkelbach's method; each step solves the relaxation
    // max over W PSD, Tr W = 1 of min_i Tr(W (N_i - rate D)). Starting from w_init the returned
    // value never falls below min_ratio(w_init).
    DinkelbachResult dinkelbach_solve(const FractionalInstance &inst, const SolverOptions &opts,
                                      const std::optional<cvec> &w_init = std::nullopt);

    struct RankOneResult
    {
        cvec w;
        double value = 0.0;
        double relaxed_value = 0.0;
        bool degraded = false;
        bool randomized = false; // true when the exact factorization was not usable
    };

    // Unit vector whose min ratio matches the relaxation W. For Toeplitz instances the
    // autocorrelation of W is spectrally factored, which is exact; otherwise (or if the
    // factorization is inaccurate) falls back to seeded Gaussian randomization.
    RankOneResult extract_rank_one(const cmat &W, const FractionalInstance &inst, std::uint64_t seed = 0);

    // Phase normalization: largest-magnitude entry made real positive, unit norm
    cvec normalize_phase(const cvec &w);

    // Exhaustive search over phase-normalized unit vectors (n <= 3) followed by pattern-search
    // refinement of the best grid points. Test oracle.
    struct OracleResult
    {
        cvec w;
        double value = 0.0;
        double grid_value = 0.0;
    };
    OracleResult sphere_grid_oracle(const FractionalInstance &inst, int resolution);

    // Principal generalized eigenpair of (N, D): the exact answer for one candidate
    OracleResult generalized_eigen_oracle(const cmat &N, const cmat &D);
}

#endif
