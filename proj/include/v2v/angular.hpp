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

#ifndef V2V_ANGULAR_HPP
#define V2V_ANGULAR_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "v2v/curve.hpp"
#include "v2v/geometry.hpp"
#include "v2v/rng.hpp"
#include "v2v/scenario.hpp"

namespace v2v
{
    // Fisher density on the sphere per unit dalpha dbeta (the cos(beta) area element is included).
    // Ignores the planar flag. Throws std::invalid_argument for |beta| > pi/2.
    template <typename Scalar>
    Scalar vmf_pdf(const VonMisesFisher &dist, Scalar alpha, Scalar beta)
    {
        using std::cos, std::sin, std::exp, std::expm1, std::abs;
        if (!(abs(beta) <= Scalar(pi / 2.0) * Scalar(1.0 + 1e-12)))
            throw std::invalid_argument("vmf_pdf: elevation must lie in [-pi/2, pi/2]");
        Scalar cb = cos(beta);
        if (cb < Scalar(0))
            cb = Scalar(0);
        if (dist.k < vmf_small_k)
            return cb / Scalar(2.0 * two_pi);
        Scalar k = Scalar(dist.k);
        Scalar arg = Scalar(std::cos(dist.beta0)) * cb * cos(alpha - Scalar(dist.alpha0)) + Scalar(std::sin(dist.beta0)) * sin(beta);
        return cb * k / (Scalar(two_pi) * -expm1(Scalar(-2) * k)) * exp(k * (arg - Scalar(1)));
    }

    // Circular von Mises density of an azimuth offset, exp(k cos d) / (2 pi I0(k))
    double circular_vm_pdf(double k, double offset);

    // Mean resultant length of the Fisher distribution, coth(k) - 1/k
    double vmf_mean_resultant_length(double k);

    // One draw; planar populations return beta = beta0
    Angles vmf_draw(const VonMisesFisher &dist, Rng &rng);

    // n draws from a fresh generator seeded with `seed`
    std::vector<Angles> vmf_sample(const VonMisesFisher &dist, std::size_t n, std::uint64_t seed);

    // Tensor quadrature of the sphere density (Gauss-Legendre in beta, trapezoid in alpha); n >= 64 per axis
    double vmf_normalization(const VonMisesFisher &dist, int n_alpha = 128, int n_beta = 128);

    // Marginal arrival-azimuth PDF of the tap-l ellipsoid population on [-pi, pi).
    // A beamwidth keeps only arrival directions whose surface point leaves the MT within [-bw, bw] in azimuth.
    CurveSeries marginal_aoa_pdf(const ValidatedScenario &scenario, int tap, std::optional<double> beamwidth,
                                 int n_points = 360);
}

#endif
