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

#include "dfrc/cone_program.hpp"
#include "test_helpers.hpp"

// Covered tests:
// - Cone sizes and packed storage
// - Linear program with a known vertex optimum
// - Equality constraints
// - Second-order cone program
// - Semidefinite programs, including the largest eigenvalue of random matrices
// - Infeasibility and unboundedness certificates
// - Real embedding of Hermitian matrices

using namespace dfrc;
using namespace dfrc_test;

TEST_CASE("Cone program - Dimensions and packing")
{
    ConeDims d;
    d.nonneg = 2;
    d.soc = {3};
    d.psd = {2, 3};
    CHECK(d.size() == 2 + 3 + 3 + 6);
    CHECK(d.degree() == 2 + 1 + 2 + 3);
    CHECK(packed_size(4) == 10);

    GaussianSource g(1);
    rmat X = rmat::Zero(4, 4), Y = rmat::Zero(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j <= i; ++j)
        {
            X(i, j) = X(j, i) = g.normal();
            Y(i, j) = Y(j, i) = g.normal();
        }
    CHECK((unpack_sym(pack_sym(X), 4) - X).norm() < 1e-14);
    CHECK(pack_sym(X).dot(pack_sym(Y)) == Catch::Approx((X * Y).trace()).epsilon(1e-13));
}

TEST_CASE("Cone program - Linear program")
{
    // minimize -x1 - x2 with x1 + 2 x2 <= 4, 3 x1 + x2 <= 6, x >= 0
    ConeProgram p;
    p.c = rvec(2);
    p.c << -1.0, -1.0;
    p.G = rmat(4, 2);
    p.G << 1, 2, 3, 1, -1, 0, 0, -1;
    p.h = rvec(4);
    p.h << 4, 6, 0, 0;
    p.A = rmat(0, 2);
    p.b = rvec(0);
    p.dims.nonneg = 4;
    auto s = solve_cone_program(p);
    REQUIRE(s.status == ConeSolution::Status::optimal);
    CHECK(s.primal_obj == Catch::Approx(-2.8).epsilon(1e-7));
    CHECK(s.dual_obj == Catch::Approx(-2.8).epsilon(1e-7));
    CHECK(s.x[0] == Catch::Approx(1.6).epsilon(1e-6));
    CHECK(s.x[1] == Catch::Approx(1.2).epsilon(1e-6));
    CHECK_FALSE(s.reduced_accuracy);
}

TEST_CASE("Cone program - Equality constraints")
{
    // minimize x1 + x2 with x1 = x2 and x1 >= 1
    ConeProgram p;
    p.c = rvec::Ones(2);
    p.G = rmat(1, 2);
    p.G << -1, 0;
    p.h = rvec::Constant(1, -1.0);
    p.A = rmat(1, 2);
    p.A << 1, -1;
    p.b = rvec::Zero(1);
    p.dims.nonneg = 1;
    auto s = solve_cone_program(p);
    REQUIRE(s.status == ConeSolution::Status::optimal);
    CHECK(s.primal_obj == Catch::Approx(2.0).epsilon(1e-7));
    CHECK(s.x[1] == Catch::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Cone program - Second-order cone")
{
    // minimize x1 + x2 with ||x|| <= 1
    ConeProgram p;
    p.c = rvec::Ones(2);
    p.G = rmat::Zero(3, 2);
    p.G(1, 0) = -1.0;
    p.G(2, 1) = -1.0;
    p.h = rvec::Zero(3);
    p.h[0] = 1.0;
    p.A = rmat(0, 2);
    p.b = rvec(0);
    p.dims.soc = {3};
    auto s = solve_cone_program(p);
    REQUIRE(s.status == ConeSolution::Status::optimal);
    CHECK(s.primal_obj == Catch::Approx(-std::sqrt(2.0)).epsilon(1e-7));
    CHECK(s.x[0] == Catch::Approx(-std::sqrt(0.5)).epsilon(1e-6));
}

TEST_CASE("Cone program - Semidefinite programs")
{
    // minimize x with [[x, 1], [1, x]] PSD
    {
        ConeProgram p;
        p.c = rvec::Ones(1);
        rmat off = rmat::Zero(2, 2);
        off(0, 1) = off(1, 0) = 1.0;
        p.h = pack_sym(off);
        p.G = -pack_sym(rmat::Identity(2, 2));
        p.A = rmat(0, 1);
        p.b = rvec(0);
        p.dims.psd = {2};
        auto s = solve_cone_program(p);
        REQUIRE(s.status == ConeSolution::Status::optimal);
        CHECK(s.primal_obj == Catch::Approx(1.0).epsilon(1e-7));
    }

    // minimize t with t I - M PSD gives the largest eigenvalue
    GaussianSource g(4);
    for (int trial = 0; trial < 10; ++trial)
    {
        const int n = 6;
        rmat M(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j)
                M(i, j) = M(j, i) = g.normal();
        ConeProgram p;
        p.c = rvec::Ones(1);
        p.h = pack_sym(-M);
        p.G = -pack_sym(rmat::Identity(n, n));
        p.A = rmat(0, 1);
        p.b = rvec(0);
        p.dims.psd = {n};
        auto s = solve_cone_program(p);
        REQUIRE(s.status == ConeSolution::Status::optimal);
        double top = Eigen::SelfAdjointEigenSolver<rmat>(M).eigenvalues().maxCoeff();
        CHECK(s.primal_obj == Catch::Approx(top).epsilon(1e-7));
    }
}

TEST_CASE("Cone program - Certificates")
{
    // x <= -1 and x >= 1
    {
        ConeProgram p;
        p.c = rvec::Zero(1);
        p.G = rmat(2, 1);
        p.G << 1, -1;
        p.h = rvec::Constant(2, -1.0);
        p.A = rmat(0, 1);
        p.b = rvec(0);
        p.dims.nonneg = 2;
        auto s = solve_cone_program(p);
        REQUIRE(s.status == ConeSolution::Status::primal_infeasible);
        CHECK(p.h.dot(s.z) == Catch::Approx(-1.0).epsilon(1e-8));
        CHECK((p.G.transpose() * s.z).norm() < 1e-7);
        CHECK(s.z.minCoeff() >= -1e-9);
    }
    // minimize -x with x >= 0
    {
        ConeProgram p;
        p.c = rvec::Constant(1, -1.0);
        p.G = rmat::Constant(1, 1, -1.0);
        p.h = rvec::Zero(1);
        p.A = rmat(0, 1);
        p.b = rvec(0);
        p.dims.nonneg = 1;
        auto s = solve_cone_program(p);
        REQUIRE(s.status == ConeSolution::Status::dual_infeasible);
        CHECK(p.c.dot(s.x) == Catch::Approx(-1.0).epsilon(1e-8));
        CHECK(s.x[0] > 0.0);
    }
}

TEST_CASE("Cone program - Real embedding")
{
    GaussianSource g(6);
    cmat H = herm(random_cmat(g, 3, 3));
    rmat E = real_embedding(H);
    CHECK((E - E.transpose()).norm() < 1e-15);
    // a complex PSD W embeds to a real PSD Z with the same inner products
    cmat W = random_psd(g, 3, 2);
    rmat Z = 0.5 * real_embedding(W);
    CHECK(Eigen::SelfAdjointEigenSolver<rmat>(Z).eigenvalues().minCoeff() > -1e-12);
    CHECK((Z.cwiseProduct(E)).sum() == Catch::Approx((W * H).trace().real()).epsilon(1e-12));
    CHECK((complex_from_embedding(Z) - W).norm() < 1e-12);
}
