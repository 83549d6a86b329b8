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

#include "v2v/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace v2v
{
    namespace
    {
        std::string fmt(const char *pattern, double x)
        {
            char buf[128];
            std::snprintf(buf, sizeof(buf), pattern, x);
            return buf;
        }

        std::string fmt2(const char *pattern, double x, double y)
        {
            char buf[160];
            std::snprintf(buf, sizeof(buf), pattern, x, y);
            return buf;
        }

        constexpr double energy_tolerance = 1e-9;
    }

    ValidationError::ValidationError(std::vector<std::string> issues)
        : std::invalid_argument([&]
                                {
                                    std::string msg = "invalid scenario:";
                                    for (const auto &s : issues)
                                        msg += "\n  - " + s;
                                    return msg; }()),
          issues_(std::move(issues))
    {
    }

    double ValidatedScenario::b(int l) const
    {
        double al = a(l);
        return std::sqrt(al * al - cfg_.f0 * cfg_.f0);
    }

    double ValidatedScenario::u(int l) const
    {
        if (cfg_.u.empty())
            return b(l);
        return cfg_.u.at(l - 1);
    }

    double ValidatedScenario::omega(int l) const
    {
        if (cfg_.omega.empty())
            return 1.0;
        return cfg_.omega.at(l - 1);
    }

    ValidatedScenario validate_scenario(const ScenarioConfig &c, const ValidationOptions &options)
    {
        std::vector<std::string> errors, warnings;
        auto require_nonneg = [&](const char *name, double x)
        {
            if (!(x >= 0.0) || !std::isfinite(x))
                errors.push_back(std::string(name) + fmt(" must be finite and non-negative (got %.17g)", x));
        };

        if (c.D != 2.0 * c.f0)
            errors.push_back(fmt2("D must equal 2*f0 exactly (D=%.17g, f0=%.17g)", c.D, c.f0));
        if (!(c.D > 0.0))
            errors.push_back(fmt("D must be positive (got %.17g)", c.D));

        const size_t L = c.a.size();
        if (L == 0)
            errors.push_back("at least one tap (semi-major axis a) is required");
        for (size_t i = 0; i < L; ++i)
        {
            if (!(c.a[i] > c.f0))
                errors.push_back("a_l must exceed f0 (l=" + std::to_string(i + 1) + fmt2(", a_l=%.17g, f0=%.17g)", c.a[i], c.f0));
            if (i > 0 && !(c.a[i] > c.a[i - 1]))
                errors.push_back("a must be strictly increasing in l (l=" + std::to_string(i + 1) + fmt2(", a_l=%.17g, a_{l-1}=%.17g)", c.a[i], c.a[i - 1]));
        }
        if (!c.u.empty())
        {
            if (c.u.size() != L)
                errors.push_back("u must list one vertical semi-axis per tap (" + std::to_string(c.u.size()) + " given, " + std::to_string(L) + " taps)");
            for (size_t i = 0; i < c.u.size(); ++i)
                if (!(c.u[i] > 0.0))
                    errors.push_back("u_l must be positive (l=" + std::to_string(i + 1) + fmt(", u_l=%.17g)", c.u[i]));
        }

        require_nonneg("R_t", c.R_t);
        require_nonneg("R_r", c.R_r);
        require_nonneg("v_R", c.v_R);
        require_nonneg("f_max", c.f_max);
        require_nonneg("ricean_K", c.ricean_K);
        require_nonneg("delta_T", c.delta_T);
        require_nonneg("delta_R", c.delta_R);
        if (!(c.f_c > 0.0))
            errors.push_back(fmt("f_c must be positive (got %.17g)", c.f_c));
        if (!(c.bandwidth > 0.0))
            errors.push_back(fmt("bandwidth must be positive (got %.17g)", c.bandwidth));
        if (c.M_T < 1)
            errors.push_back("M_T must be at least 1 (got " + std::to_string(c.M_T) + ")");
        if (c.M_R < 1)
            errors.push_back("M_R must be at least 1 (got " + std::to_string(c.M_R) + ")");

        // Energy normalisation
        const auto &e1 = c.energy_tap1;
        for (double x : {e1.sb11, e1.sb12, e1.sb13, e1.db})
            require_nonneg("tap-1 energy", x);
        double s1 = e1.sb11 + e1.sb12 + e1.sb13 + e1.db;
        if (std::abs(s1 - 1.0) > energy_tolerance)
            errors.push_back(fmt("energy sum != 1 for tap 1: eta_SB11 + eta_SB12 + eta_SB13 + eta_DB = %.17g", s1));

        if (L >= 1 && c.energy_tapl.size() != L - 1)
            errors.push_back("energy_tapl must list one entry per tap l >= 2 (" + std::to_string(c.energy_tapl.size()) + " given, " + std::to_string(L - 1) + " expected)");
        for (size_t i = 0; i < c.energy_tapl.size(); ++i)
        {
            const auto &e = c.energy_tapl[i];
            for (double x : {e.sb3, e.db1, e.db2})
                require_nonneg("tap-l energy", x);
            double s = e.sb3 + e.db1 + e.db2;
            if (std::abs(s - 1.0) > energy_tolerance)
                errors.push_back("energy sum != 1 for tap " + std::to_string(i + 2) + fmt(": eta_SBl3 + eta_DBl1 + eta_DBl2 = %.17g", s));
        }

        // Angular populations
        auto check_vmf = [&](const std::string &name, const VonMisesFisher &v)
        {
            if (!(v.k >= 0.0) || !std::isfinite(v.k))
                errors.push_back("vMF concentration k must be finite and >= 0 for " + name + fmt(" (got %.17g)", v.k));
            if (!(std::abs(v.beta0) <= pi / 2.0))
                errors.push_back("vMF mean elevation beta0 must lie in [-pi/2, pi/2] for " + name + fmt(" (got %.17g)", v.beta0));
        };
        check_vmf("tcyl", c.vmf_tcyl);
        check_vmf("rcyl", c.vmf_rcyl);
        check_vmf("ground", c.vmf_ground);
        if (c.vmf_ellipsoid.size() != L)
            errors.push_back("vmf.ellipsoid must list one population per tap (" + std::to_string(c.vmf_ellipsoid.size()) + " given, " + std::to_string(L) + " taps)");
        for (size_t i = 0; i < c.vmf_ellipsoid.size(); ++i)
            check_vmf("ellipsoid." + std::to_string(i + 1), c.vmf_ellipsoid[i]);

        if (c.ground)
        {
            require_nonneg("ground.H_t", c.ground->H_t);
            require_nonneg("ground.H_r", c.ground->H_r);
            require_nonneg("ground.eta", c.ground->eta);
        }

        if (!c.omega.empty())
        {
            if (c.omega.size() != L)
                errors.push_back("omega must list one weight per tap (" + std::to_string(c.omega.size()) + " given, " + std::to_string(L) + " taps)");
            for (double w : c.omega)
                require_nonneg("omega", w);
        }
        if (c.focus_tap < 1 || c.focus_tap > static_cast<int>(std::max<size_t>(L, 1)))
            errors.push_back("focus_tap out of range (got " + std::to_string(c.focus_tap) + ")");

        // TDL separability and delay resolution
        if (L >= 2)
        {
            double min_gap = c.a[1] - c.a[0];
            for (size_t i = 1; i + 1 < L; ++i)
                min_gap = std::min(min_gap, c.a[i + 1] - c.a[i]);
            double rmax = std::max(c.R_t, c.R_r);
            if (!(rmax < min_gap))
            {
                std::string msg = fmt2("TDL separability violated: max{R_t, R_r} = %.17g is not < min(a_{l+1} - a_l) = %.17g", rmax, min_gap);
                if (c.is_preset || options.allow_tdl_violation)
                    warnings.push_back(msg);
                else
                    errors.push_back(msg + " (use --allow-tdl-violation to downgrade)");
            }
            for (size_t i = 0; i + 1 < L; ++i)
            {
                double tau = 2.0 * (c.a[i + 1] - c.a[i]) / speed_of_light;
                if (c.bandwidth > 0.0 && tau < 1.0 / c.bandwidth)
                    errors.push_back("inter-tap delay below delay resolution: 2(a_{l+1} - a_l)/c = " + fmt("%.6g s", tau) +
                                     fmt(" < 1/bandwidth = %.6g s", 1.0 / c.bandwidth) + " (l=" + std::to_string(i + 1) + ")");
            }
        }

        if (!errors.empty())
            throw ValidationError(std::move(errors));
        return ValidatedScenario(c, std::move(warnings));
    }

    TapGeometry tap_geometry(const ValidatedScenario &s, int l)
    {
        if (l < 1 || l > s.num_taps())
            throw std::out_of_range("tap index " + std::to_string(l) + " out of range [1, " + std::to_string(s.num_taps()) + "]");
        const auto &c = s.config();
        TapGeometry g;
        g.l = l;
        g.a_l = s.a(l);
        g.b_l = s.b(l);
        g.u_l = s.u(l);
        g.tau_l = c.D / speed_of_light;
        for (int i = 1; i < l; ++i)
            g.tau_l += 2.0 * (s.a(i + 1) - s.a(i)) / speed_of_light;
        g.delay_resolution = 1.0 / c.bandwidth;
        return g;
    }

    const std::vector<std::string> &preset_names()
    {
        static const std::vector<std::string> names = {"tap1-highway", "tap1-urban", "tap2-highway", "tap2-urban"};
        return names;
    }

    ScenarioConfig load_preset(const std::string &name)
    {
        const auto &names = preset_names();
        if (std::find(names.begin(), names.end(), name) == names.end())
            throw std::invalid_argument("unknown preset '" + name + "' (expected tap1-highway, tap1-urban, tap2-highway or tap2-urban)");

        const bool highway = name.find("highway") != std::string::npos;
        ScenarioConfig c;
        c.name = name;
        c.is_preset = true;
        c.focus_tap = name.rfind("tap2", 0) == 0 ? 2 : 1;

        c.D = 200.0;
        c.f0 = 100.0;
        c.a = {120.0, 140.0};
        c.f_c = 5.4e9;
        c.bandwidth = 50e6;
        c.psi_T = c.theta_T = pi / 3.0;
        c.psi_R = c.theta_R = pi / 3.0;
        c.delta_T = c.delta_R = speed_of_light / c.f_c;
        c.M_T = c.M_R = 2;

        double k11, k12, k13;
        if (highway)
        {
            c.R_t = c.R_r = 40.0;
            c.v_R = 25.0;
            c.f_max = 433.0;
            c.ricean_K = 3.942;
            c.energy_tap1 = {0.371, 0.212, 0.402, 0.015};
            c.energy_tapl = {{0.724, 0.138, 0.138}};
            k11 = 8.9, k12 = 2.7, k13 = 12.3;
        }
        else
        {
            c.R_t = c.R_r = 20.0;
            c.v_R = 8.3;
            c.f_max = 144.0;
            c.ricean_K = 1.062;
            c.energy_tap1 = {0.142, 0.142, 0.085, 0.631};
            c.energy_tapl = {{0.056, 0.472, 0.472}};
            k11 = 0.55, k12 = 1.21, k13 = 12.3;
        }
        c.vmf_tcyl = {0.0, 0.0, k11, false};
        c.vmf_rcyl = {pi, 0.0, k12, false};
        c.vmf_ellipsoid = {{pi / 2.0, 0.0, k13, false}, {pi / 2.0, 0.0, k13, false}};
        return c;
    }
}
