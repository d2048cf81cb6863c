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

#ifndef DFRC_TYPES_H
#define DFRC_TYPES_H

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dfrc
{
    using cplx = std::complex<double>;
    using cvec = Eigen::VectorXcd;
    using cmat = Eigen::MatrixXcd;
    using rvec = Eigen::VectorXd;
    using rmat = Eigen::MatrixXd;

    constexpr double pi = 3.141592653589793238462643383279502884;

    // Angle in radians, measured from broadside. Constructed only through checked factories
    // where the valid range matters (see array_model.hpp).
    struct Angle
    {
        double rad = 0.0;
    };

    // Bad input (dimensions, ranges, config contents)
    class ConfigError : public std::invalid_argument
    {
    public:
        ConfigError(const std::string &msg, std::string field_ = {}, int line_ = 0)
            : std::invalid_argument(msg), field(std::move(field_)), line(line_) {}
        std::string field;
        int line = 0;
    };

    // Input violates a numerical precondition (non-Hermitian, indefinite, NaN)
    class NumericalError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Certified infeasibility; the certificate holds the dual ray returned by the conic solver
    class InfeasibleError : public std::runtime_error
    {
    public:
        InfeasibleError(const std::string &msg, rvec certificate_ = {})
            : std::runtime_error(msg), certificate(std::move(certificate_)) {}
        rvec certificate;
    };

    // Iteration budget exhausted without meeting the tolerance
    class NonConvergenceError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Power-ball slack stayed above tolerance after penalty escalation
    class PenaltyFailure : public std::runtime_error
    {
    public:
        PenaltyFailure(const std::string &msg, double slack_)
            : std::runtime_error(msg), slack(slack_) {}
        double slack;
    };

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
    inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
    inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

    // Hermitian part, used to remove round-off asymmetry before eigen-decompositions
    inline cmat herm(const cmat &A) { return 0.5 * (A + A.adjoint()); }
}

#endif
