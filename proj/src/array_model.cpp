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

#include "dfrc/array_model.hpp"

#include <cmath>
#include <string>

namespace dfrc
{
    void ArrayGeometry::validate() const
    {
        if (n_tx < 1)
            throw ConfigError("n_tx must be at least 1", "geometry.n_tx");
        if (n_rx < 1)
            throw ConfigError("n_rx must be at least 1", "geometry.n_rx");
        if (!std::isfinite(spacing) || spacing <= 0.0)
            throw ConfigError("element spacing must be positive", "geometry.spacing");
    }

    bool angle_in_range(double rad)
    {
        // small slack so that +-pi/2 written as decimals still parses
        return std::isfinite(rad) && std::abs(rad) <= 0.5 * pi + 1e-12;
    }

    Angle make_angle(double rad)
    {
        if (!angle_in_range(rad))
            throw ConfigError("angle " + std::to_string(rad) + " rad is outside [-pi/2, pi/2]", "angle");
        return Angle{rad};
    }

    cvec ula_steering(int n, double spacing, double theta)
    {
        cvec a(n);
        const double step = 2.0 * pi * spacing * std::sin(theta);
        for (int k = 0; k < n; ++k)
            a[k] = std::polar(1.0, step * double(k));
        return a;
    }

    cvec tx_steering(const ArrayGeometry &geom, Angle theta)
    {
        return ula_steering(geom.n_tx, geom.spacing, theta.rad);
    }

    cvec rx_steering(const ArrayGeometry &geom, Angle theta)
    {
        return ula_steering(geom.n_rx, geom.spacing, theta.rad);
    }

    ResponseMatrix response_matrix(const ArrayGeometry &geom, Angle theta)
    {
        ResponseMatrix A;
        A.entries = rx_steering(geom, theta) * tx_steering(geom, theta).adjoint();
        A.angle = theta;
        return A;
    }

    std::vector<double> rx_beampattern(const cvec &w, const ArrayGeometry &geom, const std::vector<Angle> &grid)
    {
        if (w.size() != geom.n_rx)
            throw ConfigError("receive beamformer length does not match n_rx");
        if (std::abs(w.norm() - 1.0) > 1e-9)
            throw NumericalError("receive beamformer must have unit norm");

        std::vector<double> gain;
        gain.reserve(grid.size());
        for (const auto &theta : grid)
            gain.push_back(std::norm(w.dot(rx_steering(geom, theta))));
        return gain;
    }

    std::vector<Angle> angle_grid(double lo, double hi, int points)
    {
        std::vector<Angle> grid;
        if (points <= 0)
            return grid;
        if (points == 1)
            return {Angle{lo}};
        grid.reserve(points);
        for (int k = 0; k < points; ++k)
            grid.push_back(Angle{lo + (hi - lo) * double(k) / double(points - 1)});
        return grid;
    }
}
