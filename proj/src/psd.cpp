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

#include <cmath>
#include <cstdio>

#include "v2v/config_io.hpp"
#include "v2v/errors.hpp"
#include "v2v/statistics.hpp"

namespace v2v
{
    namespace
    {
        constexpr std::complex<double> I(0.0, 1.0);

        // Composite 8-point Gauss-Legendre rule on [-pi, pi] with about n nodes
        void composite_nodes(int n, Eigen::VectorXd &x, Eigen::VectorXd &w)
        {
            const int order = 8, panels = std::max(1, (n + order - 1) / order);
            Eigen::VectorXd gx, gw;
            gauss_legendre(order, gx, gw);
            x.resize(panels * order);
            w.resize(panels * order);
            const double h = two_pi / panels;
            for (int p = 0; p < panels; ++p)
                for (int i = 0; i < order; ++i)
                {
                    x(p * order + i) = -pi + h * (p + 0.5) + 0.5 * h * gx(i);
                    w(p * order + i) = 0.5 * h * gw(i);
                }
        }

        double lag_window(LagWindow window, double u)
        {
            u = std::abs(u);
            if (u >= 1.0)
                return 0.0;
            if (window == LagWindow::bartlett)
                return 1.0 - u;
            if (u <= 0.5)
                return 1.0 - 6.0 * u * u + 6.0 * u * u * u;
            return 2.0 * std::pow(1.0 - u, 3);
        }
    }

    CurveSeries characteristic_function(const std::function<std::complex<double>(double)> &rho_df,
                                        const Eigen::VectorXd &omega, double abs_tol)
    {
        VectorIntegrand f = [&](double df)
        {
            std::complex<double> r = rho_df(df);
            Eigen::ArrayXcd v(omega.size());
            for (Eigen::Index i = 0; i < omega.size(); ++i)
                v(i) = r * std::exp(I * omega(i) * df);
            return v;
        };
        CurveSeries out;
        out.x_name = "omega";
        out.x_unit = "1/Hz";
        out.x = omega;
        out.value_name = "chi";
        out.is_complex = true;
        out.values = integrate_adaptive(f, -pi, pi, abs_tol, 20000).matrix();
        out.set_meta("method", "quadrature");
        return out;
    }

    CurveSeries characteristic_function(const CurveSeries &rho_df, const Eigen::VectorXd &omega)
    {
        const Eigen::Index n = rho_df.x.size();
        if (n < 3)
            throw std::invalid_argument("characteristic_function needs at least 3 frequency-lag samples");
        const double step = rho_df.x(1) - rho_df.x(0);
        for (Eigen::Index i = 1; i < n; ++i)
            if (std::abs(rho_df.x(i) - rho_df.x(i - 1) - step) > 1e-9 * std::abs(step))
                throw std::invalid_argument("characteristic_function needs a uniform frequency-lag grid");
        if (std::abs(rho_df.x(0) + pi) > 1e-9 || std::abs(rho_df.x(n - 1) - pi) > 1e-9)
            throw std::invalid_argument("characteristic_function needs a grid spanning [-pi, pi]");
        double wmax = omega.size() ? omega.cwiseAbs().maxCoeff() : 0.0;
        if (wmax * step >= pi)
        {
            char buf[200];
            std::snprintf(buf, sizeof(buf), "frequency-lag grid too coarse: max|omega| * step = %.4g >= pi (Nyquist)", wmax * step);
            throw std::invalid_argument(buf);
        }
        CurveSeries out;
        out.x_name = "omega";
        out.x_unit = "1/Hz";
        out.x = omega;
        out.value_name = "chi";
        out.is_complex = true;
        out.values.resize(omega.size());
        for (Eigen::Index k = 0; k < omega.size(); ++k)
        {
            std::complex<double> sum = 0.0;
            for (Eigen::Index i = 0; i < n; ++i)
                sum += (i == 0 || i == n - 1 ? 0.5 : 1.0) * rho_df.values(i) * std::exp(I * omega(k) * rho_df.x(i));
            out.values(k) = sum * step;
        }
        out.set_meta("method", "trapezoid");
        return out;
    }

    CurveSeries doppler_psd_paper(const std::function<std::complex<double>(double)> &rho_t,
                                  const Eigen::VectorXd &gamma, double abs_tol)
    {
        VectorIntegrand f = [&](double t)
        {
            std::complex<double> r = rho_t(t);
            Eigen::ArrayXcd v(gamma.size());
            for (Eigen::Index i = 0; i < gamma.size(); ++i)
                v(i) = r * std::exp(-I * two_pi * t * gamma(i));
            return v;
        };
        CurveSeries out;
        out.x_name = "gamma";
        out.x_unit = "Hz";
        out.x = gamma;
        out.value_name = "psd";
        out.is_complex = true;
        out.values = integrate_adaptive(f, -pi, pi, abs_tol, 20000).matrix();
        out.set_meta("method", "paper");
        return out;
    }

    CurveSeries doppler_psd_paper(const ValidatedScenario &s, int tap, const Eigen::VectorXd &gamma,
                                  const PaperPsdOptions &options, PathModel model, const QuadratureOptions &quad)
    {
        if (options.n_df < 2 || options.n_t < 1 || options.n_omega < 3 || !(options.omega_max > 0.0))
            throw std::invalid_argument("doppler_psd_paper: invalid node counts or omega range");
        Eigen::VectorXd dfx, dfw, tx, tw;
        gauss_legendre(options.n_df, dfx, dfw);
        dfx *= pi;
        dfw *= pi;
        composite_nodes(options.n_t, tx, tw);

        std::vector<Component> comps;
        for (Component c : tap_components(s, tap))
            if (c != Component::los && component_weight(s, tap, c) > 0.0)
                comps.push_back(c);

        const double h = 2.0 * options.omega_max / (options.n_omega - 1);
        Eigen::VectorXcd rho_t(tx.size());
        for (Eigen::Index it = 0; it < tx.size(); ++it)
        {
            std::vector<Eigen::ArrayXcd> rho_df;
            for (Component c : comps)
                rho_df.push_back(frequency_cf_values(s, tap, tx(it), c, dfx, model, quad));
            // (1/2 pi) * integral of the product of characteristic functions over omega (trapezoid)
            std::complex<double> acc = 0.0;
            for (int k = 0; k < options.n_omega; ++k)
            {
                double omega = -options.omega_max + h * k;
                std::complex<double> prod = 1.0;
                for (const auto &r : rho_df)
                {
                    std::complex<double> chi = 0.0;
                    for (Eigen::Index i = 0; i < dfx.size(); ++i)
                        chi += dfw(i) * r(i) * std::exp(I * omega * dfx(i));
                    prod *= chi;
                }
                acc += (k == 0 || k == options.n_omega - 1 ? 0.5 : 1.0) * prod;
            }
            rho_t(it) = acc * h / two_pi;
        }

        CurveSeries out;
        out.x_name = "gamma";
        out.x_unit = "Hz";
        out.x = gamma;
        out.value_name = "psd";
        out.is_complex = true;
        out.values.resize(gamma.size());
        for (Eigen::Index g = 0; g < gamma.size(); ++g)
        {
            std::complex<double> sum = 0.0;
            for (Eigen::Index it = 0; it < tx.size(); ++it)
                sum += tw(it) * rho_t(it) * std::exp(-I * two_pi * tx(it) * gamma(g));
            out.values(g) = sum;
        }
        out.set_meta("scenario_hash", scenario_hash_hex(s.config()));
        out.set_meta("method", "paper");
        out.set_meta("tap", std::to_string(tap));
        out.set_meta("path_model", path_model_name(model));
        return out;
    }

    CurveSeries doppler_psd_standard(const ValidatedScenario &s, int tap, double t, const Eigen::VectorXd &gamma,
                                     Component component, PathModel model, const QuadratureOptions &quad,
                                     const StandardPsdOptions &options)
    {
        const double fmax = s.config().f_max;
        double dtau = options.dtau > 0.0 ? options.dtau : (fmax > 0.0 ? 1.0 / (4.0 * fmax) : 0.0);
        double T = options.window_length > 0.0 ? options.window_length : (fmax > 0.0 ? 100.0 / fmax : 0.0);
        if (!(dtau > 0.0) || !(T > 0.0))
            throw std::invalid_argument("doppler_psd_standard needs f_max > 0 or an explicit lag step and window");
        if (fmax > 0.0 && dtau > 1.0 / (2.0 * fmax))
        {
            char buf[200];
            std::snprintf(buf, sizeof(buf), "Nyquist violation: lag step %.4g s exceeds 1/(2 f_max) = %.4g s", dtau, 1.0 / (2.0 * fmax));
            throw std::invalid_argument(buf);
        }
        const long M = static_cast<long>(std::ceil(T / dtau));
        // Zero-offset ACF with frozen geometry is Hermitian: rho(-tau) = conj(rho(tau))
        Eigen::VectorXd half(M + 1);
        for (long n = 0; n <= M; ++n)
            half(n) = static_cast<double>(n) * dtau;
        CurveSeries positive = temporal_acf(s, tap, t, half, component, model, quad);
        Eigen::VectorXd taus(2 * M + 1);
        CurveSeries acf;
        acf.values.resize(2 * M + 1);
        for (long n = -M; n <= M; ++n)
        {
            taus(n + M) = static_cast<double>(n) * dtau;
            acf.values(n + M) = n >= 0 ? positive.values(n) : std::conj(positive.values(-n));
        }
        const double rho0 = acf.values(M).real();
        if (!(rho0 > 0.0))
            throw NumericalError("temporal ACF at zero lag is not positive");

        CurveSeries out;
        out.x_name = "gamma";
        out.x_unit = "Hz";
        out.x = gamma;
        out.value_name = "psd";
        out.values.resize(gamma.size());
        for (Eigen::Index g = 0; g < gamma.size(); ++g)
        {
            std::complex<double> sum = 0.0;
            for (long n = -M; n <= M; ++n)
                sum += lag_window(options.window, static_cast<double>(n) / M) * acf.values(n + M) *
                       std::exp(-I * two_pi * gamma(g) * taus(n + M));
            out.values(g) = sum.real() * dtau / rho0;
        }
        out.set_meta("scenario_hash", scenario_hash_hex(s.config()));
        out.set_meta("method", "standard");
        out.set_meta("component", component_name(component));
        out.set_meta("tap", std::to_string(tap));
        out.set_meta("t", format_double(t));
        out.set_meta("dtau", format_double(dtau));
        out.set_meta("window_length", format_double(M * dtau));
        out.set_meta("window", options.window == LagWindow::parzen ? "parzen" : "bartlett");
        out.set_meta("path_model", path_model_name(model));
        return out;
    }
}
