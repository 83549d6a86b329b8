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

#include "v2v/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>

#include "v2v/angular.hpp"
#include "v2v/config_io.hpp"
#include "v2v/errors.hpp"
#include "v2v/geometry.hpp"

namespace v2v
{
    namespace
    {
        constexpr std::complex<double> I(0.0, 1.0);

        struct ComponentShape
        {
            Population first;
            std::optional<Population> second;
        };

        ComponentShape component_shape(Component c)
        {
            switch (c)
            {
            case Component::sb11:
                return {Population::tcyl, std::nullopt};
            case Component::sb12:
                return {Population::rcyl, std::nullopt};
            case Component::sb13:
            case Component::sbl3:
                return {Population::ellipsoid, std::nullopt};
            case Component::ground:
                return {Population::ground, std::nullopt};
            case Component::db:
                return {Population::tcyl, Population::rcyl};
            case Component::dbl1:
                return {Population::tcyl, Population::ellipsoid};
            case Component::dbl2:
                return {Population::ellipsoid, Population::rcyl};
            default:
                break;
            }
            throw std::invalid_argument("component " + component_name(c) + " has no scatterer population");
        }

        const VonMisesFisher &population_vmf(const ValidatedScenario &s, Population pop, int tap)
        {
            const auto &c = s.config();
            switch (pop)
            {
            case Population::tcyl:
                return c.vmf_tcyl;
            case Population::rcyl:
                return c.vmf_rcyl;
            case Population::ellipsoid:
                return s.vmf_ellipsoid(tap);
            case Population::ground:
                break;
            }
            return c.vmf_ground;
        }

        // g(bounce, w) returns w times the integrand; w is the population density at the node
        using BounceIntegrand = std::function<Eigen::ArrayXcd(const Bounce &, double)>;

        // Integral of pdf(alpha, beta) g(bounce) over the population's support
        Eigen::ArrayXcd population_integral(const RayContext &ctx, Population pop, int tap, const BounceIntegrand &g,
                                            const QuadratureOptions &quad)
        {
            const VonMisesFisher &d = population_vmf(ctx.scenario(), pop, tap);
            if (d.planar)
            {
                VectorIntegrand f = [&](double alpha)
                { return g(ctx.bounce(pop, tap, alpha, d.beta0), circular_vm_pdf(d.k, alpha - d.alpha0)); };
                return periodic_trapezoid(f, 0.1 * quad.abs_tol, quad.min_alpha_nodes, quad.max_alpha_nodes);
            }
            SphereIntegrand f = [&](double alpha, double beta)
            { return g(ctx.bounce(pop, tap, alpha, beta), vmf_pdf(d, alpha, beta)); };
            return sphere_integral(f, quad);
        }

        struct WeightedBounce
        {
            Bounce b;
            double w;
        };

        // Product rule: n Gauss-Legendre nodes per elevation panel and max(32, 2n) azimuth nodes (azimuth only if planar)
        std::vector<WeightedBounce> population_nodes(const RayContext &ctx, Population pop, int tap, int n)
        {
            const VonMisesFisher &d = population_vmf(ctx.scenario(), pop, tap);
            std::vector<WeightedBounce> out;
            const int na = std::max(32, 2 * n);
            if (d.planar)
            {
                for (int i = 0; i < na; ++i)
                {
                    double alpha = -pi + two_pi * i / na;
                    out.push_back({ctx.bounce(pop, tap, alpha, d.beta0), circular_vm_pdf(d.k, alpha - d.alpha0) * two_pi / na});
                }
                return out;
            }
            // Elevation panels break at 0, at the cylinder clamp and at heights R 2^i / 2 in between, so each panel
            // sees a bounded swing of the cylinder height R tan(beta)
            const double bc = cylinder_elevation_clamp * pi / 2.0;
            std::vector<double> edges = {0.0};
            for (double z = 0.5; std::atan(z) < bc; z *= 2.0)
                edges.push_back(std::atan(z));
            edges.push_back(bc);
            edges.push_back(pi / 2.0);
            Eigen::VectorXd x, w;
            gauss_legendre(n, x, w);
            for (double sign : {-1.0, 1.0})
                for (std::size_t e = 0; e + 1 < edges.size(); ++e)
                {
                    const double mid = 0.5 * (edges[e] + edges[e + 1]), half = 0.5 * (edges[e + 1] - edges[e]);
                    for (int j = 0; j < n; ++j)
                    {
                        double beta = sign * (mid + half * x(j));
                        for (int i = 0; i < na; ++i)
                        {
                            double alpha = -pi + two_pi * i / na;
                            out.push_back({ctx.bounce(pop, tap, alpha, beta), vmf_pdf(d, alpha, beta) * half * w(j) * two_pi / na});
                        }
                    }
                }
            return out;
        }

        bool is_uniform_grid(const Eigen::VectorXd &x)
        {
            if (x.size() < 3)
                return false;
            double h = x(1) - x(0);
            for (Eigen::Index i = 2; i < x.size(); ++i)
                if (std::abs(x(i) - x(i - 1) - h) > 1e-12 * std::max(1.0, std::abs(h)))
                    return false;
            return true;
        }

        // Plain complex product; std::complex multiplication takes the slow Annex G path without -ffast-math
        inline std::complex<double> cmul(std::complex<double> a, std::complex<double> b)
        {
            return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
        }

        // acc(m) += w exp(-j 2 pi dfs(m) x)
        void add_delay_phasors(Eigen::ArrayXcd &acc, const Eigen::VectorXd &dfs, bool uniform, double x, double w)
        {
            if (uniform)
            {
                std::complex<double> z = std::polar(w, -two_pi * dfs(0) * x);
                const std::complex<double> step = std::polar(1.0, -two_pi * (dfs(1) - dfs(0)) * x);
                for (Eigen::Index m = 0; m < dfs.size(); ++m)
                {
                    acc(m) += z;
                    z = cmul(z, step);
                }
                return;
            }
            for (Eigen::Index m = 0; m < dfs.size(); ++m)
                acc(m) += std::polar(w, -two_pi * dfs(m) * x);
        }

        // Distinct element offsets of a lag list, so each leg is evaluated once per bounce
        struct LagLayout
        {
            std::vector<double> offT, offR;
            std::vector<int> iTA, iTB, iRA, iRB;
            bool uniform_tau = false; // One offset pair and an arithmetic tau grid
            double tau0 = 0.0, dtau = 0.0;

            explicit LagLayout(const std::vector<LagPoint> &lags)
            {
                auto index = [](std::vector<double> &set, double x)
                {
                    auto it = std::find(set.begin(), set.end(), x);
                    if (it != set.end())
                        return static_cast<int>(it - set.begin());
                    set.push_back(x);
                    return static_cast<int>(set.size() - 1);
                };
                for (const auto &L : lags)
                {
                    iTA.push_back(index(offT, L.sT_A));
                    iTB.push_back(index(offT, L.sT_B));
                    iRA.push_back(index(offR, L.sR_A));
                    iRB.push_back(index(offR, L.sR_B));
                }
                if (lags.size() >= 3 && offT.size() <= 2 && offR.size() <= 2)
                {
                    uniform_tau = true;
                    tau0 = lags[0].tau;
                    dtau = lags[1].tau - lags[0].tau;
                    for (std::size_t i = 1; i < lags.size(); ++i)
                    {
                        const auto &L = lags[i];
                        uniform_tau = uniform_tau && iTA[i] == iTA[0] && iTB[i] == iTB[0] && iRA[i] == iRA[0] && iRB[i] == iRB[0] &&
                                      std::abs(L.tau - tau0 - static_cast<double>(i) * dtau) <= 1e-12 * std::max(std::abs(tau0), std::abs(L.tau)) + 1e-300;
                    }
                }
            }
        };

        // v(i) = w exp(j (k dl_i + wd tau_i dop)) with dl_i = path(A) - path(B)
        void fill_lag_phasors(Eigen::ArrayXcd &v, const LagLayout &lay, const std::vector<LagPoint> &lags, const std::vector<double> &lT,
                              const std::vector<double> &lR, double k, double wd, double dop, double w)
        {
            const Eigen::Index m = v.size();
            if (lay.uniform_tau)
            {
                double dl = lT[lay.iTA[0]] + lR[lay.iRA[0]] - lT[lay.iTB[0]] - lR[lay.iRB[0]];
                std::complex<double> z = std::polar(w, k * dl + wd * lay.tau0 * dop);
                const std::complex<double> step = std::polar(1.0, wd * lay.dtau * dop);
                for (Eigen::Index i = 0; i < m; ++i)
                {
                    v(i) = z;
                    z = cmul(z, step);
                }
                return;
            }
            for (Eigen::Index i = 0; i < m; ++i)
            {
                double dl = lT[lay.iTA[i]] + lR[lay.iRA[i]] - lT[lay.iTB[i]] - lR[lay.iRB[i]];
                v(i) = std::polar(w, k * dl + wd * lags[i].tau * dop);
            }
        }

        // Unweighted space CF of one component
        Eigen::ArrayXcd component_space_cf(const ValidatedScenario &s, int tap, double t, Component c,
                                           const std::vector<LagPoint> &lags, PathModel model, const QuadratureOptions &quad)
        {
            const RayContext ctx(s, t, model);
            const double k = s.wavenumber(), wd = two_pi * s.config().f_max;
            const Eigen::Index m = static_cast<Eigen::Index>(lags.size());
            const LagLayout lay(lags);
            const std::vector<double> zeros_T(lay.offT.size(), 0.0), zeros_R(lay.offR.size(), 0.0);

            if (c == Component::los)
            {
                Eigen::ArrayXcd out(m);
                double dop = ctx.los_doppler();
                for (Eigen::Index i = 0; i < m; ++i)
                {
                    const auto &g = lags[i];
                    double dl = ctx.los_length(g.sT_A, g.sR_A) - ctx.los_length(g.sT_B, g.sR_B);
                    out(i) = std::exp(I * (k * dl + wd * g.tau * dop));
                }
                return out;
            }

            auto legs_T = [&](const Bounce &b)
            {
                std::vector<double> l(lay.offT.size());
                for (std::size_t j = 0; j < l.size(); ++j)
                    l[j] = ctx.leg_T(b, lay.offT[j]);
                return l;
            };
            auto legs_R = [&](const Bounce &b)
            {
                std::vector<double> l(lay.offR.size());
                for (std::size_t j = 0; j < l.size(); ++j)
                    l[j] = ctx.leg_R(b, lay.offR[j]);
                return l;
            };

            ComponentShape shape = component_shape(c);
            if (!shape.second)
            {
                BounceIntegrand g = [&](const Bounce &b, double w)
                {
                    Eigen::ArrayXcd v(m);
                    fill_lag_phasors(v, lay, lags, legs_T(b), legs_R(b), k, wd, b.doppler, w);
                    return v;
                };
                return population_integral(ctx, shape.first, tap, g, quad);
            }

            // Double bounce: the middle leg cancels between the links and the Doppler belongs to the last bounce
            BounceIntegrand g1 = [&](const Bounce &b, double w)
            {
                Eigen::ArrayXcd v(m);
                fill_lag_phasors(v, lay, lags, legs_T(b), zeros_R, k, 0.0, 0.0, w);
                return v;
            };
            BounceIntegrand g2 = [&](const Bounce &b, double w)
            {
                Eigen::ArrayXcd v(m);
                fill_lag_phasors(v, lay, lags, zeros_T, legs_R(b), k, wd, b.doppler, w);
                return v;
            };
            QuadratureOptions half = quad;
            half.abs_tol *= 0.5;
            return population_integral(ctx, shape.first, tap, g1, half) * population_integral(ctx, *shape.second, tap, g2, half);
        }

        Eigen::ArrayXcd component_frequency_cf(const ValidatedScenario &s, int tap, double t, Component c,
                                               const Eigen::VectorXd &dfs, PathModel model, const QuadratureOptions &quad,
                                               double sT, double sR)
        {
            const RayContext ctx(s, t, model);
            const double ref = tap_geometry(s, tap).tau_l;
            const bool uniform = is_uniform_grid(dfs);
            const Eigen::Index m = dfs.size();

            if (c == Component::los)
            {
                Eigen::ArrayXcd v = Eigen::ArrayXcd::Zero(m);
                add_delay_phasors(v, dfs, uniform, ctx.los_length(sT, sR) / speed_of_light - ref, 1.0);
                return v;
            }

            ComponentShape shape = component_shape(c);
            if (!shape.second)
            {
                BounceIntegrand g = [&](const Bounce &b, double w)
                {
                    Eigen::ArrayXcd v = Eigen::ArrayXcd::Zero(m);
                    add_delay_phasors(v, dfs, uniform, (ctx.leg_T(b, sT) + ctx.leg_R(b, sR)) / speed_of_light - ref, w);
                    return v;
                };
                return population_integral(ctx, shape.first, tap, g, quad);
            }

            // The middle leg couples both scatterers: product rule, doubling the node level until stable
            Eigen::ArrayXcd previous;
            double change = INFINITY;
            for (int n = 4; n <= quad.max_tensor_level; n *= 2)
            {
                auto nodes1 = population_nodes(ctx, shape.first, tap, n);
                auto nodes2 = population_nodes(ctx, *shape.second, tap, n);
                std::vector<double> legT(nodes1.size()), legR(nodes2.size());
                for (std::size_t i = 0; i < nodes1.size(); ++i)
                    legT[i] = ctx.leg_T(nodes1[i].b, sT);
                for (std::size_t j = 0; j < nodes2.size(); ++j)
                    legR[j] = ctx.leg_R(nodes2[j].b, sR);
                Eigen::ArrayXcd acc = Eigen::ArrayXcd::Zero(m);
                for (std::size_t i = 0; i < nodes1.size(); ++i)
                {
                    if (nodes1[i].w == 0.0)
                        continue;
                    for (std::size_t j = 0; j < nodes2.size(); ++j)
                    {
                        double L = legT[i] + ctx.leg_mid(nodes1[i].b, nodes2[j].b) + legR[j];
                        add_delay_phasors(acc, dfs, uniform, L / speed_of_light - ref, nodes1[i].w * nodes2[j].w);
                    }
                }
                // Normalise by the discrete vMF mass so that zero lag is exactly one
                double w1 = 0.0, w2 = 0.0;
                for (const auto &nb : nodes1)
                    w1 += nb.w;
                for (const auto &nb : nodes2)
                    w2 += nb.w;
                acc /= w1 * w2;
                if (previous.size() == m)
                {
                    change = (acc - previous).abs().maxCoeff();
                    if (change <= quad.tensor_abs_tol)
                        return acc;
                }
                previous = std::move(acc);
            }
            char buf[160];
            std::snprintf(buf, sizeof(buf), "double-bounce frequency CF did not converge at %d nodes per panel", quad.max_tensor_level);
            throw ConvergenceError(buf, change, quad.tensor_abs_tol);
        }

        std::string hash_of(const ValidatedScenario &s) { return scenario_hash_hex(s.config()); }
    }

    LagPoint lag_from_elements(const ValidatedScenario &s, int p, int q, int p2, int q2, double tau)
    {
        const auto &c = s.config();
        for (int e : {p, p2})
            if (e < 1 || e > c.M_T)
                throw std::out_of_range("MT element " + std::to_string(e) + " out of range");
        for (int e : {q, q2})
            if (e < 1 || e > c.M_R)
                throw std::out_of_range("MR element " + std::to_string(e) + " out of range");
        return {element_offset(c.M_T, p, c.delta_T), element_offset(c.M_R, q, c.delta_R),
                element_offset(c.M_T, p2, c.delta_T), element_offset(c.M_R, q2, c.delta_R), tau};
    }

    Eigen::ArrayXcd space_cf(const ValidatedScenario &s, int tap, double t, Component component,
                             const std::vector<LagPoint> &lags, PathModel model, const QuadratureOptions &quad, bool normalized)
    {
        if (component != Component::total)
        {
            Eigen::ArrayXcd v = component_space_cf(s, tap, t, component, lags, model, quad);
            double w = component_weight(s, tap, component);
            return normalized ? v : Eigen::ArrayXcd(w * v);
        }
        auto comps = tap_components(s, tap);
        Eigen::ArrayXcd sum = Eigen::ArrayXcd::Zero(static_cast<Eigen::Index>(lags.size()));
        double wsum = 0.0;
        for (Component c : comps)
        {
            double w = component_weight(s, tap, c);
            if (w == 0.0)
                continue;
            sum += w * component_space_cf(s, tap, t, c, lags, model, quad);
            wsum += w;
        }
        if (!(wsum > 0.0))
            throw NumericalError("tap " + std::to_string(tap) + " carries no power");
        return sum / wsum;
    }

    std::complex<double> space_cf_component(const ValidatedScenario &s, const CfRequest &req)
    {
        if (req.component == Component::total)
            throw std::invalid_argument("space_cf_component needs a single component; use space_cf_total");
        return space_cf(s, req.tap, req.t, req.component, {LagPoint{0.0, 0.0, req.delta_T, req.delta_R, req.tau}}, req.model, req.quad)(0);
    }

    std::complex<double> space_cf_total(const ValidatedScenario &s, const CfRequest &req)
    {
        return space_cf(s, req.tap, req.t, Component::total, {LagPoint{0.0, 0.0, req.delta_T, req.delta_R, req.tau}}, req.model, req.quad)(0);
    }

    SpacingSide parse_spacing_side(const std::string &name)
    {
        if (name == "T" || name == "t")
            return SpacingSide::T;
        if (name == "R" || name == "r")
            return SpacingSide::R;
        if (name == "both")
            return SpacingSide::both;
        throw std::invalid_argument("unknown spacing side '" + name + "' (expected T, R or both)");
    }

    CurveSeries space_cf_curve(const ValidatedScenario &s, int tap, double t, double tau, Component component,
                               const Eigen::VectorXd &spacing, SpacingSide side, PathModel model, const QuadratureOptions &quad)
    {
        const double lambda = s.wavelength();
        std::vector<LagPoint> lags;
        for (Eigen::Index i = 0; i < spacing.size(); ++i)
        {
            double d = spacing(i) * lambda;
            lags.push_back({0.0, 0.0, side != SpacingSide::R ? d : 0.0, side != SpacingSide::T ? d : 0.0, tau});
        }
        CurveSeries out;
        out.x_name = "spacing";
        out.x_unit = "wavelength";
        out.x = spacing;
        out.value_name = "rho";
        out.is_complex = true;
        if (component == Component::total)
            out.values = space_cf(s, tap, t, component, lags, model, quad).matrix();
        else
        {
            Eigen::ArrayXcd v = space_cf(s, tap, t, component, lags, model, quad, true);
            out.values = (component_weight(s, tap, component) * v).matrix();
            out.extra_columns.emplace_back("rho_norm_abs", v.abs().matrix());
            out.set_meta("weight", format_double(component_weight(s, tap, component)));
        }
        out.set_meta("scenario_hash", hash_of(s));
        out.set_meta("method", "quadrature");
        out.set_meta("component", component_name(component));
        out.set_meta("tap", std::to_string(tap));
        out.set_meta("t", format_double(t));
        out.set_meta("tau", format_double(tau));
        out.set_meta("gamma_R", format_double(s.config().gamma_R));
        out.set_meta("spacing_side", side == SpacingSide::T ? "T" : side == SpacingSide::R ? "R" : "both");
        out.set_meta("path_model", path_model_name(model));
        out.set_meta("abs_tol", format_double(quad.abs_tol));
        return out;
    }

    CurveSeries temporal_acf(const ValidatedScenario &s, int tap, double t, const Eigen::VectorXd &taus,
                             Component component, PathModel model, const QuadratureOptions &quad)
    {
        std::vector<LagPoint> lags;
        for (Eigen::Index i = 0; i < taus.size(); ++i)
            lags.push_back({0.0, 0.0, 0.0, 0.0, taus(i)});
        CurveSeries out;
        out.x_name = "tau";
        out.x_unit = "s";
        out.x = taus;
        out.value_name = "rho";
        out.is_complex = true;
        out.values = space_cf(s, tap, t, component, lags, model, quad, true).matrix();
        out.set_meta("scenario_hash", hash_of(s));
        out.set_meta("method", "quadrature");
        out.set_meta("component", component_name(component));
        out.set_meta("tap", std::to_string(tap));
        out.set_meta("t", format_double(t));
        out.set_meta("path_model", path_model_name(model));
        return out;
    }

    Eigen::ArrayXcd frequency_cf_values(const ValidatedScenario &s, int tap, double t, Component component,
                                        const Eigen::VectorXd &dfs, PathModel model, const QuadratureOptions &quad,
                                        double sT, double sR)
    {
        if (component != Component::total)
            return component_frequency_cf(s, tap, t, component, dfs, model, quad, sT, sR);
        Eigen::ArrayXcd sum = Eigen::ArrayXcd::Zero(dfs.size());
        double wsum = 0.0;
        for (Component c : tap_components(s, tap))
        {
            double w = component_weight(s, tap, c);
            if (w == 0.0)
                continue;
            sum += w * component_frequency_cf(s, tap, t, c, dfs, model, quad, sT, sR);
            wsum += w;
        }
        if (!(wsum > 0.0))
            throw NumericalError("tap " + std::to_string(tap) + " carries no power");
        return sum / wsum;
    }

    CurveSeries frequency_cf(const ValidatedScenario &s, int tap, double t, const Eigen::VectorXd &dfs,
                             Component component, PathModel model, const QuadratureOptions &quad, int p, int q)
    {
        const auto &c = s.config();
        double sT = p > 0 ? element_offset(c.M_T, p, c.delta_T) : 0.0;
        double sR = q > 0 ? element_offset(c.M_R, q, c.delta_R) : 0.0;
        CurveSeries out;
        out.x_name = "delta_f";
        out.x_unit = "Hz";
        out.x = dfs;
        out.value_name = "rho";
        out.is_complex = true;
        out.values = frequency_cf_values(s, tap, t, component, dfs, model, quad, sT, sR).matrix();
        out.set_meta("scenario_hash", hash_of(s));
        out.set_meta("method", "quadrature");
        out.set_meta("component", component_name(component));
        out.set_meta("tap", std::to_string(tap));
        out.set_meta("t", format_double(t));
        out.set_meta("gamma_R", format_double(c.gamma_R));
        out.set_meta("path_model", path_model_name(model));
        return out;
    }
}
