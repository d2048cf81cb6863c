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

#include "dfrc/alternating.hpp"
#include "dfrc/transmit_opt.hpp"
#include "test_helpers.hpp"

// Covered tests:
// - Penalty weight scaling
// - Tangent minorant: minorization and tangency on random draws
// - Basis completion is unitary with the requested first column
// - Alignment update attains the smallest penalty over unitaries
// - Rate update agrees with the rate program
// - Subproblem layout
// - Inner loop: surrogate ascent, power sphere and SINR targets

using namespace dfrc;
using namespace dfrc_test;

namespace
{
    struct Setup
    {
        ScenarioConfig config = small_scenario(4);
        ChannelSet channels;
        QuadraticFormSet forms;

        explicit Setup(std::uint64_t seed)
        {
            GaussianSource g(seed);
            channels = generate_channels(config, seed);
            forms = build_forms(random_unit(g, config.geometry.n_rx), channels, config);
        }
    };
}

TEST_CASE("Transmit - Penalty weight scaling")
{
    Setup s(1);
    SolverOptions o;
    o.penalty_eta = 3.0;
    CHECK(effective_eta(o, s.forms) == Catch::Approx(3.0 / s.config.sigma_r()).epsilon(1e-15));
}

TEST_CASE("Transmit - Tangent minorant")
{
    GaussianSource g(2);
    int violations = 0;
    for (int t = 0; t < 1000; ++t)
    {
        const int n = 2 + t % 7;
        cmat M = random_psd(g, n, 1 + t % n);
        cvec u0 = random_cvec(g, n), u = random_cvec(g, n);
        AffineForm f = surrogate_affine(M, u0);
        double exact = u.dot(M * u).real();
        double scale = std::max(1.0, std::abs(exact));
        if (f(u) > exact + 1e-10 * scale)
            ++violations;
        // tangency: the gap is exactly the quadratic form of the displacement
        cvec d = u - u0;
        if (std::abs(exact - f(u) - d.dot(M * d).real()) > 1e-10 * scale)
            ++violations;
        if (std::abs(f(u0) - u0.dot(M * u0).real()) > 1e-10 * std::max(1.0, u0.squaredNorm() * M.norm()))
            ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("Transmit - Basis completion")
{
    GaussianSource g(3);
    for (int n : {1, 2, 5, 8})
    {
        cvec v = random_cvec(g, n);
        cmat B = complete_basis(v);
        CHECK((B.adjoint() * B - cmat::Identity(n, n)).norm() < 1e-12);
        CHECK((B.col(0) - v / v.norm()).norm() < 1e-14);
    }
    // a vector along a canonical axis still yields a full basis
    cvec e = cvec::Zero(4);
    e[2] = 2.0;
    cmat B = complete_basis(e);
    CHECK((B.adjoint() * B - cmat::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("Transmit - Alignment update is optimal")
{
    GaussianSource g(4);
    for (int t = 0; t < 20; ++t)
    {
        Setup s(100 + t);
        cvec u = random_cvec(g, s.forms.dim());
        auto Q = update_alignment(s.forms, u);
        auto x = target_amplitudes(u, s.forms);
        double y = clutter_amplitude(u, s.forms);
        std::vector<double> lam = {x[0] * x[0] / (y * y) * 2.0 * g.uniform(), x[1] * x[1] / (y * y) * 2.0 * g.uniform()};
        auto res = alignment_residuals(u, s.forms, Q, lam);
        for (int i = 0; i < 2; ++i)
        {
            double expect = std::pow(x[i] - std::sqrt(lam[i]) * y, 2);
            CHECK(std::abs(res[i] - expect) <= 1e-9 * std::max(expect, x[i] * x[i]));
            CHECK((Q[i].adjoint() * Q[i] - cmat::Identity(s.forms.dim(), s.forms.dim())).norm() < 1e-10);
        }
        for (int r = 0; r < 10; ++r)
        {
            std::vector<cmat> Qr = {random_unitary(g, s.forms.dim()), random_unitary(g, s.forms.dim())};
            auto other = alignment_residuals(u, s.forms, Qr, lam);
            for (int i = 0; i < 2; ++i)
                CHECK(res[i] <= other[i] * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("Transmit - Rate update")
{
    Setup s(5);
    GaussianSource g(5);
    cvec u = random_cvec(g, s.forms.dim());
    double eta = 2.0 / s.forms.sigma_r;
    auto lam = update_lambda(s.forms, u, eta);
    auto ref = solve_lambda_program(target_amplitudes(u, s.forms), clutter_amplitude(u, s.forms), eta);
    REQUIRE(lam.size() == ref.size());
    for (size_t i = 0; i < lam.size(); ++i)
        CHECK(lam[i] == ref[i]);
    CHECK_THROWS_AS(update_lambda(s.forms, cvec::Zero(s.forms.dim()), eta), NumericalError);
}

TEST_CASE("Transmit - Subproblem layout")
{
    Setup s(6);
    GaussianSource g(6);
    cvec u0 = random_cvec(g, s.forms.dim());
    auto Q = update_alignment(s.forms, u0);
    auto lam = update_lambda(s.forms, u0, 2.0 / s.forms.sigma_r);
    SurrogatePair sp = build_surrogate_R(s.forms, Q, lam);
    ConvexQcqp p = build_u_subproblem(s.forms, sp, u0, s.config, 1.0);
    CHECK(p.halfspaces.size() == 1);
    CHECK(p.quadratics.size() == 2);
    CHECK(p.radius_sq == s.forms.p_max);
    CHECK(p.slack_weight == 1.0);
    // objective at u0 equals the normalized surrogate there
    CHECK(2.0 * p.r.dot(u0).real() + p.r0 == Catch::Approx(u0.dot(sp.R_hat * u0).real() / sp.mu).epsilon(1e-10));
    CHECK_THROWS_AS(build_u_subproblem(s.forms, sp, cvec::Constant(s.forms.dim(), NAN), s.config, 1.0), NumericalError);
}

TEST_CASE("Transmit - Inner loop")
{
    ScenarioConfig c = small_scenario(7);
    ChannelSet ch = generate_channels(c);
    SolverOptions o = c.solver;
    cvec w = rx_steering(c.geometry, c.target_angles[0]) / 2.0;
    QuadraticFormSet forms = build_forms(w, ch, c);
    StackedBeamformer u0 = initialize_beamformers(ch, c);
    auto Q = update_alignment(forms, u0.u);
    auto lam = update_lambda(forms, u0.u, effective_eta(o, forms));
    InnerResult r = inner_loop_u(u0, forms, Q, lam, c, o);

    REQUIRE(r.surrogate_trace.size() >= 2);
    for (size_t j = 1; j < r.surrogate_trace.size(); ++j)
        CHECK(r.surrogate_trace[j] >= r.surrogate_trace[j - 1] - 1e-10 * std::abs(r.surrogate_trace[j - 1]));
    CHECK(r.u.power() == Catch::Approx(c.p_max()).epsilon(1e-12));
    for (int k = 0; k < c.n_users(); ++k)
        CHECK(linear_to_db(sinr(k, r.u, ch, c)) >= c.users[k].sinr_threshold_db - 0.01);
}
