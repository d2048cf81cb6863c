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

#ifndef DFRC_ARRAY_MODEL_H
#define DFRC_ARRAY_MODEL_H

#include "dfrc/types.hpp"

namespace dfrc
{
    // Uniform linear arrays with a shared element spacing (in carrier wavelengths)
    struct ArrayGeometry
    {
        int n_tx = 8;
        int n_rx = 8;
        double spacing = 0.5;

        void validate() const; // throws ConfigError
    };

    // Checked construction; rejects non-finite values and angles outside [-pi/2, pi/2].
    // A ULA cannot tell theta from pi - theta, so wrapping would silently change the scene.
    Angle make_angle(double rad);
    bool angle_in_range(double rad);

    // Steering vectors. Entry n carries phase +2*pi*n*spacing*sin(theta), which is the
    // conjugate of the row of phase terms with a trailing Hermitian transpose. Only
    // relative phases matter downstream.
    cvec tx_steering(const ArrayGeometry &geom, Angle theta);
    cvec rx_steering(const ArrayGeometry &geom, Angle theta);
    cvec ula_steering(int n, double spacing, double theta);

    // Rank-one two-way response, rx_steering(theta) * tx_steering(theta)^H, shape n_rx x n_tx
    struct ResponseMatrix
    {
        cmat entries;
        Angle angle;
    };
    ResponseMatrix response_matrix(const ArrayGeometry &geom, Angle theta);

    // Receive beampattern |w^H a_r(theta)|^2 (linear) on a grid of angles. Requires unit-norm w.
    std::vector<double> rx_beampattern(const cvec &w, const ArrayGeometry &geom, const std::vector<Angle> &grid);

    // Evenly spaced grid over [lo, hi], inclusive
    std::vector<Angle> angle_grid(double lo, double hi, int points);
}

#endif
