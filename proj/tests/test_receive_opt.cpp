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

#include <catch2/catch_amalgamated.hpp>

#include "dfrc/receive_opt.hpp"
#include "test_helpers.hpp"

// Covered tests:
// - Fractional instance from a beamformer: Toeplitz structure and positive definite denominator
// - Phase normalization
// - Single candidate against the generalized eigenpair
// - Global optimality against the sphere grid oracle on radar and generic instances
// - Dinkelbach parameter trace and warm start guarantee
// - Rank-one extraction of an exact rank-one relaxation
// - Oracle input checks

using namespace dfrc;
using namespace dfrc_test;

TEST_CASE("Receive - Fractional instance structure")
{
    GaussianSource g(1);
    FractionalInstance inst = random_radar_instance(g, 6, 3);
    REQUIRE(inst.N.size() == 3);
    CHECK(toeplitz_defect(inst.D) <= 1e-10 * inst.D.norm());
    for (const auto &N : inst.N)
        CHECK(toeplitz_defect(N) <= 1e-10 * N.norm());
    CHECK(Eigen::SelfAdjointEigenSolver<cmat>(inst.D).eigenvalues().minCoeff() >= 1.0 - 1e-12);
    CHECK_THROWS_AS(build_fractional(StackedBeamformer::zeros(2, 4), small_scenario()), NumericalError);
}

TEST_CASE("Receive - Phase normalization")
{
    GaussianSource g(2);
    cvec w = 3.0 * random_cvec(g, 5);
    cvec n = normalize_phase(w);
    CHECK(n.norm() == Catch::Approx(1.0).epsilon(1e-15));
    Eigen::Index idx = 0;
    n.cwiseAbs().maxCoeff(&idx);
    CHECK(n[idx].imag() == 0.0);
    CHECK(n[idx].real() > 0.0);
    // same ray
    CHECK(std::abs(std::abs(n.dot(w)) - w.norm()) < 1e-12 * w.norm());
}

TEST_CASE("Receive - Single candidate matches the generalized eigenpair")
{
    GaussianSource g(3);
    SolverOptions o;
    for (int n : {2, 4, 8, 16})
        for (int trial = 0; trial < 3; ++trial)
        {
            FractionalInstance inst = random_radar_instance(g, n, 1);
            auto d = dinkelbach_solve(inst, o);
            auto e = generalized_eigen_oracle(inst.N[0], inst.D);
            CHECK(rel_diff(d.value, e.value) <= 1e-8);
            CHECK(d.w.norm() == Catch::Approx(1.0).epsilon(1e-12));
        }
}

TEST_CASE("Receive - Global optimality against the grid oracle")
{
    GaussianSource g(4);
    SolverOptions o;
    for (int trial = 0; trial < 8; ++trial)
    {
        const int n = 2 + trial % 2;
        FractionalInstance inst = random_radar_instance(g, n, 2 + trial % 2);
        auto d = dinkelbach_solve(inst, o);
        auto orc = sphere_grid_oracle(inst, n == 2 ? 64 : 20);
        CHECK(rel_diff(d.value, orc.value) <= 1e-3);
        CHECK(d.value >= orc.value * (1.0 - 1e-6));
        CHECK(rel_diff(min_ratio(d.w, inst), d.value) <= 1e-12);
    }
    // generic Hermitian instances with two ratios, where the relaxation is still tight
    for (int trial = 0; trial < 4; ++trial)
    {
        const int n = 2 + trial % 2;
        FractionalInstance inst = random_fractional(g, n, 2, 2);
        auto d = dinkelbach_solve(inst, o);
        auto orc = sphere_grid_oracle(inst, n == 2 ? 64 : 20);
        CHECK(rel_diff(d.value, orc.value) <= 1e-3);
    }
}

TEST_CASE("Receive - Dinkelbach trace and warm start")
{
    GaussianSource g(5);
    SolverOptions o;
    FractionalInstance inst = random_radar_instance(g, 8, 3);
    cvec w0 = random_unit(g, 8);
    auto d = dinkelbach_solve(inst, o, w0);
    REQUIRE(!d.rate_trace.empty());
    for (size_t j = 1; j < d.rate_trace.size(); ++j)
        CHECK(d.rate_trace[j] > d.rate_trace[j - 1]);
    CHECK(d.value >= min_ratio(w0, inst));
    CHECK(d.relaxed_value >= d.value * (1.0 - 1e-6));
    CHECK_FALSE(d.degraded);
    CHECK(d.w.norm() == Catch::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("Receive - Rank-one extraction")
{
    GaussianSource g(6);
    FractionalInstance inst = random_radar_instance(g, 5, 2);
    cvec v = random_unit(g, 5);
    auto r = extract_rank_one(v * v.adjoint(), inst);
    CHECK(rel_diff(r.value, min_ratio(v, inst)) <= 1e-8);
    CHECK(r.w.norm() == Catch::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(r.degraded);
}

TEST_CASE("Receive - Oracle input checks")
{
    GaussianSource g(7);
    CHECK_THROWS_AS(sphere_grid_oracle(random_fractional(g, 4, 2), 10), ConfigError);
    CHECK_THROWS_AS(sphere_grid_oracle(random_fractional(g, 2, 2), 1), ConfigError);
    cmat D = -cmat::Identity(2, 2);
    CHECK_THROWS_AS(generalized_eigen_oracle(cmat::Identity(2, 2), D), NumericalError);
}
