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

#include "v2v/angular.hpp"

#include <algorithm>

#include "v2v/quadrature.hpp"

namespace v2v
{
    namespace
    {
        double wrap_angle(double a)
        {
            a = std::fmod(a + pi, two_pi);
            if (a < 0.0)
                a += two_pi;
            return a - pi;
        }

        // Best-Fisher rejection sampler for the circular von Mises law
        double circular_vm_draw(double k, Rng &rng)
        {
            if (k < 1e-6)
                return two_pi * rng.uniform() - pi;
            double tau = 1.0 + std::sqrt(1.0 + 4.0 * k * k);
            double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * k);
            double r = (1.0 + rho * rho) / (2.0 * rho);
            while (true)
            {
                double z = std::cos(pi * rng.uniform());
                double f = (1.0 + r * z) / (r + z);
                double c = k * (r - f);
                double u2 = rng.uniform_open0();
                double u3 = rng.uniform();
                if (c * (2.0 - c) - u2 > 0.0 || std::log(c / u2) + 1.0 - c >= 0.0)
                    return (u3 < 0.5 ? -1.0 : 1.0) * std::acos(std::clamp(f, -1.0, 1.0));
            }
        }
    }

    double circular_vm_pdf(double k, double offset)
    {
        if (k < vmf_small_k)
            return 1.0 / two_pi;
        return std::exp(k * (std::cos(offset) - 1.0)) / (two_pi * std::cyl_bessel_i(0.0, k) * std::exp(-k));
    }

    double vmf_mean_resultant_length(double k)
    {
        if (k < 1e-4)
            return k / 3.0;
        return 1.0 / std::tanh(k) - 1.0 / k;
    }

    Angles vmf_draw(const VonMisesFisher &dist, Rng &rng)
    {
        if (dist.planar)
            return {wrap_angle(dist.alpha0 + circular_vm_draw(dist.k, rng)), dist.beta0};

        // Cosine of the angle to the mean direction by inverting the Fisher colatitude CDF
        double v = rng.uniform();
        double w = dist.k < vmf_small_k ? 1.0 - 2.0 * v : 1.0 + std::log1p(-v * -std::expm1(-2.0 * dist.k)) / dist.k;
        w = std::clamp(w, -1.0, 1.0);
        double phi = two_pi * rng.uniform();
        double s = std::sqrt(std::max(0.0, 1.0 - w * w));

        Point3 mu = unit_direction(dist.alpha0, dist.beta0);
        Point3 e1(-std::sin(dist.beta0) * std::cos(dist.alpha0), -std::sin(dist.beta0) * std::sin(dist.alpha0), std::cos(dist.beta0));
        Point3 e2(-std::sin(dist.alpha0), std::cos(dist.alpha0), 0.0);
        Point3 x = w * mu + s * (std::cos(phi) * e1 + std::sin(phi) * e2);
        return {std::atan2(x.y(), x.x()), std::asin(std::clamp(x.z(), -1.0, 1.0))};
    }

    std::vector<Angles> vmf_sample(const VonMisesFisher &dist, std::size_t n, std::uint64_t seed)
    {
        Rng rng(seed);
        std::vector<Angles> out(n);
        for (auto &a : out)
            a = vmf_draw(dist, rng);
        return out;
    }

    double vmf_normalization(const VonMisesFisher &dist, int n_alpha, int n_beta)
    {
        if (n_alpha < 64 || n_beta < 64)
            throw std::invalid_argument("vmf_normalization needs at least 64 nodes per axis");
        Eigen::VectorXd x, w;
        gauss_legendre(n_beta, x, w);
        double total = 0.0;
        for (int j = 0; j < n_beta; ++j)
        {
            double beta = 0.5 * pi * x(j), row = 0.0;
            for (int i = 0; i < n_alpha; ++i)
                row += vmf_pdf(dist, -pi + two_pi * i / n_alpha, beta);
            total += 0.5 * pi * w(j) * row * two_pi / n_alpha;
        }
        return total;
    }

    CurveSeries marginal_aoa_pdf(const ValidatedScenario &s, int tap, std::optional<double> beamwidth, int n_points)
    {
        if (tap < 1 || tap > s.num_taps())
            throw std::out_of_range("tap index " + std::to_string(tap) + " out of range");
        if (beamwidth && !(*beamwidth > 0.0 && *beamwidth <= pi))
            throw std::invalid_argument("beamwidth must lie in (0, pi]");
        if (n_points < 8)
            throw std::invalid_argument("marginal_aoa_pdf needs at least 8 points");

        const auto &c = s.config();
        const VonMisesFisher &dist = s.vmf_ellipsoid(tap);
        const double a = s.a(tap), b = s.b(tap), u = s.u(tap);

        // Arrival direction (alpha, |beta|) from the MR focus; keep it when the surface point is inside the MT beam
        auto illuminated = [&](double alpha, double beta)
        {
            if (!beamwidth)
                return true;
            Point3 dir = unit_direction(alpha, std::abs(beta));
            double r = ellipsoid_range(a, b, u, c.f0, Point3(-dir.x(), dir.y(), dir.z()));
            double departure = std::atan2(r * dir.y(), c.D + r * dir.x());
            return std::abs(departure) <= *beamwidth;
        };

        CurveSeries out;
        out.x_name = "alpha_R";
        out.x_unit = "rad";
        out.value_name = "pdf";
        out.x.resize(n_points);
        out.values.resize(n_points);
        for (int i = 0; i < n_points; ++i)
        {
            double alpha = -pi + two_pi * i / n_points;
            auto f = [&](double beta)
            { return illuminated(alpha, beta) ? vmf_pdf(dist, alpha, beta) : 0.0; };
            out.x(i) = alpha;
            out.values(i) = integrate_adaptive(f, -pi / 2.0, 0.0, 1e-9, 20000) + integrate_adaptive(f, 0.0, pi / 2.0, 1e-9, 20000);
        }
        double area = out.values.real().sum() * two_pi / n_points;
        if (!(area > 0.0))
            throw NumericalError("marginal AoA PDF has no support inside the beamwidth");
        out.values /= area;
        out.set_meta("tap", std::to_string(tap));
        out.set_meta("beamwidth", beamwidth ? std::to_string(*beamwidth) : "none");
        return out;
    }
}
