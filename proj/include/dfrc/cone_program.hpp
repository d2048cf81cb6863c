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

#ifndef DFRC_CONE_PROGRAM_H
#define DFRC_CONE_PROGRAM_H

#include <vector>

#include "dfrc/types.hpp"

namespace dfrc
{
    // Product cone: a nonnegative orthant, second-order cones, and real symmetric PSD
    // blocks stored as packed lower triangles with off-diagonals scaled by sqrt(2), so that
    // the plain dot product of two packed blocks is the trace inner product.
    struct ConeDims
    {
        int nonneg = 0;
        std::vector<int> soc;
        std::vector<int> psd;

        int size() const;   // length of s and z
        int degree() const; // barrier parameter
    };

    // minimize c'x  s.t.  G x + s = h,  A x = b,  s in K
    // dual:    maximize -h'z - b'y  s.t.  G'z + A'y + c = 0,  z in K
    struct ConeProgram
    {
        rvec c;
        rmat G;
        rvec h;
        rmat A; // may have zero rows
        rvec b;
        ConeDims dims;
    };

    struct ConeOptions
    {
        double tol = 1e-8;
        // when the iteration breaks down numerically, the best iterate is still reported as
        // optimal if its residuals and relative gap are below this level
        double fallback_tol = 1e-6;
        int max_iter = 200;
    };

    struct ConeSolution
    {
        enum class Status
        {
            optimal,
            primal_infeasible, // y, z hold a normalized certificate: h'z + b'y = -1, G'z + A'y ~ 0
            dual_infeasible,   // x, s hold a normalized improving ray: c'x = -1
            max_iter           // x, s, y, z hold the last iterate
        };
        Status status = Status::max_iter;
        rvec x, s, y, z;
        double primal_obj = 0.0;
        double dual_obj = 0.0;
        double gap = 0.0;  // s'z
        double pres = 0.0; // relative primal residual
        double dres = 0.0; // relative dual residual
        int iterations = 0;
        bool reduced_accuracy = false; // optimal only to fallback_tol
    };

    ConeSolution solve_cone_program(const ConeProgram &p, const ConeOptions &opts = {});

    // Packed storage of symmetric matrices
    int packed_size(int n);
    rvec pack_sym(const rmat &X);
    rmat unpack_sym(const Eigen::Ref<const rvec> &v, int n);

    // Real symmetric embedding [Re -Im; Im Re] of a Hermitian matrix H. For a real symmetric
    // Z the Hermitian matrix W = Z11 + Z22 + i(Z21 - Z12) satisfies Tr(W H) = <Z, embedding(H)>,
    // and W is PSD whenever Z is. This maps PSD duals back to complex covariances.
    rmat real_embedding(const cmat &H);
    cmat complex_from_embedding(const rmat &Z);
}

#endif
