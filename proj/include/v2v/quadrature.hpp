// SPDX-License-Identifier: Apache-2.0
//
// v2v-gbsm: 3D non-stationary wideband MIMO V2V channel simulator
// Copyright (C) 2026 The v2v-gbsm authors
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

#ifndef V2V_QUADRATURE_HPP
#define V2V_QUADRATURE_HPP

#include <Eigen/Dense>
#include <complex>
#include <functional>

namespace v2v
{
    struct QuadratureOptions
    {
        double abs_tol = 1e-5;        // Absolute tolerance on every component of the result
        int max_intervals = 4000;     // Global adaptive Gauss-Kronrod interval budget
        int min_alpha_nodes = 32;     // Periodic trapezoid start (doubled until converged)
        int max_alpha_nodes = 1 << 15;
        int max_tensor_level = 32;    // Largest per-panel node level of the double-bounce tensor rules
        double tensor_abs_tol = 1e-3; // Level-to-level change accepted by the double-bounce tensor rules
    };

    using VectorIntegrand = std::function<Eigen::ArrayXcd(double)>;
    using SphereIntegrand = std::function<Eigen::ArrayXcd(double alpha, double beta)>;

    // Gauss-Legendre nodes and weights on [-1, 1]
    void gauss_legendre(int n, Eigen::VectorXd &nodes, Eigen::VectorXd &weights);

    // Global adaptive Gauss-Kronrod (7/15) on [a, b]; the error estimate is the largest |K15 - G7| over components.
    // Throws ConvergenceError when the interval budget runs out.
    Eigen::ArrayXcd integrate_adaptive(const VectorIntegrand &f, double a, double b, double abs_tol,
                                       int max_intervals = 4000, double *achieved = nullptr);
    double integrate_adaptive(const std::function<double(double)> &f, double a, double b, double abs_tol,
                              int max_intervals = 4000, double *achieved = nullptr);

    // Trapezoid rule over one period [-pi, pi), doubling the node count until successive results agree to abs_tol
    Eigen::ArrayXcd periodic_trapezoid(const VectorIntegrand &f, double abs_tol, int min_nodes, int max_nodes);

    // Integral over alpha in [-pi, pi), beta in [-pi/2, pi/2] (no area element: f carries it).
    // Adaptive Gauss-Kronrod in beta, split at beta = 0, with an inner periodic trapezoid in alpha.
    Eigen::ArrayXcd sphere_integral(const SphereIntegrand &f, const QuadratureOptions &options = {});
}

#endif
