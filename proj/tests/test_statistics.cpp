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

#include "catch_amalgamated.hpp"

#include <cmath>

#include "v2v/statistics.hpp"

using namespace v2v;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    ValidatedScenario preset(const std::string &name)
    {
        return validate_scenario(load_preset(name));
    }

    // MR-ring single bounce only, planar von Mises azimuths
    ValidatedScenario ring_only(double k, double alpha0 = pi, double gamma_R = 0.0)
    {
        auto c = load_preset("tap1-highway");
        c.is_preset = false;
        c.R_t = c.R_r = 10.0;
        c.ricean_K = 0.0;
        c.energy_tap1 = {0.0, 1.0, 0.0, 0.0};
        c.vmf_rcyl = {alpha0, 0.0, k, true};
        c.gamma_R = gamma_R;
        return validate_scenario(c);
    }

    std::vector<LagPoint> time_lags(const Eigen::VectorXd &taus)
    {
        std::vector<LagPoint> lags;
        for (Eigen::Index i = 0; i < taus.size(); ++i)
            lags.push_back({0.0, 0.0, 0.0, 0.0, taus(i)});
        return lags;
    }
}

TEST_CASE("total space CF is one at zero lag for every preset", "[statistics]")
{
    for (const auto &name : preset_names())
    {
        auto s = preset(name);
        for (int tap = 1; tap <= 2; ++tap)
        {
            CfRequest r;
            r.tap = tap;
            r.t = 2.0;
            auto rho = space_cf_total(s, r);
            CHECK_THAT(rho.real(), WithinAbs(1.0, 2e-5));
            CHECK_THAT(rho.imag(), WithinAbs(0.0, 2e-5));
        }
    }
}

TEST_CASE("weighted components at zero lag equal their power shares", "[statistics]")
{
    auto s = preset("tap1-highway");
    const double K = 3.942;
    CfRequest r;
    r.component = Component::los;
    CHECK_THAT(std::abs(space_cf_component(s, r)), WithinAbs(K / (K + 1.0), 1e-12));
    r.component = Component::sb13;
    CHECK_THAT(space_cf_component(s, r).real(), WithinAbs(0.402 / (K + 1.0), 2e-5));
    CHECK(component_weight(s, 1, Component::db) == 0.015 / (K + 1.0));
    auto s2 = preset("tap2-urban");
    r.tap = 2;
    r.component = Component::dbl1;
    CHECK_THAT(space_cf_component(s2, r).real(), WithinAbs(0.472, 2e-5));
}

TEST_CASE("LoS correlation keeps its magnitude under antenna spacing", "[statistics]")
{
    auto s = preset("tap1-highway");
    CfRequest r;
    r.component = Component::los;
    r.delta_T = 2.0 * s.wavelength();
    r.delta_R = 1.0 * s.wavelength();
    CHECK_THAT(std::abs(space_cf_component(s, r)), WithinAbs(3.942 / 4.942, 1e-12));
}

TEST_CASE("isotropic ring reproduces the Clarke autocorrelation", "[statistics]")
{
    auto s = ring_only(0.0);
    Eigen::VectorXd taus = Eigen::VectorXd::LinSpaced(61, 0.0, 3.0 / 433.0);
    auto rho = space_cf(s, 1, 0.0, Component::sb12, time_lags(taus), PathModel::exact, QuadratureOptions{1e-9}, true);
    for (Eigen::Index i = 0; i < taus.size(); ++i)
    {
        CHECK_THAT(rho(i).real(), WithinAbs(std::cyl_bessel_j(0.0, two_pi * 433.0 * taus(i)), 1e-6));
        CHECK_THAT(rho(i).imag(), WithinAbs(0.0, 1e-6));
    }
}

TEST_CASE("non-isotropic ring matches the von Mises autocorrelation", "[statistics]")
{
    const double k = 3.0, mu = pi / 3.0;
    auto s = ring_only(k, mu);
    Eigen::VectorXd taus = Eigen::VectorXd::LinSpaced(21, 0.0, 2.0 / 433.0);
    auto rho = space_cf(s, 1, 0.0, Component::sb12, time_lags(taus), PathModel::exact, QuadratureOptions{1e-9}, true);
    for (Eigen::Index i = 0; i < taus.size(); ++i)
    {
        // E[exp(j x cos(alpha))] = I0(sqrt(k^2 - x^2 + 2 j k x cos(mu))) / I0(k)
        double x = two_pi * 433.0 * taus(i);
        std::complex<double> z = std::sqrt(std::complex<double>(k * k - x * x, 2.0 * k * x * std::cos(mu)));
        // Series for I0 at complex argument
        std::complex<double> term = 1.0, sum = 1.0, q = z * z / 4.0;
        for (int m = 1; m < 80; ++m)
        {
            term *= q / static_cast<double>(m * m);
            sum += term;
        }
        double expected = std::abs(sum) / std::cyl_bessel_i(0.0, k);
        CHECK_THAT(std::abs(rho(i)), WithinAbs(expected, 1e-6));
    }
}

TEST_CASE("isotropic ring space CF follows J0 of the projected spacing", "[statistics]")
{
    auto s = ring_only(0.0);
    const double lambda = s.wavelength();
    for (double d : {0.25, 0.5, 1.0, 2.0})
    {
        CfRequest r;
        r.component = Component::sb12;
        r.delta_R = d * lambda;
        r.quad.abs_tol = 1e-9;
        double expected = std::cyl_bessel_j(0.0, two_pi * d * std::cos(pi / 3.0));
        CHECK_THAT(std::abs(space_cf_component(s, r)), WithinAbs(std::abs(expected), 5e-3));
    }
}

TEST_CASE("space CF magnitude never exceeds one", "[statistics]")
{
    auto s = preset("tap2-urban");
    Eigen::VectorXd spacing = Eigen::VectorXd::LinSpaced(7, 0.0, 3.0);
    for (int tap = 1; tap <= 2; ++tap)
    {
        auto curve = space_cf_curve(s, tap, 2.0, 0.0, Component::total, spacing, SpacingSide::both);
        CHECK(curve.abs().maxCoeff() <= 1.0 + 2e-5);
    }
}

TEST_CASE("space CF curve layout and metadata", "[statistics]")
{
    auto s = preset("tap1-highway");
    Eigen::VectorXd spacing(3);
    spacing << 0.0, 1.0, 2.0;
    auto curve = space_cf_curve(s, 1, 2.0, 0.0, Component::sb13, spacing);
    CHECK(curve.x_name == "spacing");
    CHECK(curve.x_unit == "wavelength");
    CHECK(curve.is_complex);
    CHECK(curve.meta("component") == "SB_1,3");
    CHECK(curve.meta("spacing_side") == "T");
    CHECK(curve.meta("method") == "quadrature");
    REQUIRE(curve.extra_columns.size() == 1);
    CHECK(curve.extra_columns[0].first == "rho_norm_abs");
    CHECK_THAT(curve.extra_columns[0].second(0), WithinAbs(1.0, 2e-5));
    REQUIRE_THROWS_AS(parse_spacing_side("X"), std::invalid_argument);
}

TEST_CASE("WSS snapshot: moving direction is irrelevant at t = 0 and tau = 0", "[statistics]")
{
    std::vector<std::complex<double>> values;
    for (double g : {pi / 6.0, pi / 3.0, pi / 2.0, 2.0 * pi / 3.0})
    {
        auto c = load_preset("tap1-urban");
        c.gamma_R = g;
        auto s = validate_scenario(c);
        CfRequest r;
        r.component = Component::sb12;
        r.delta_R = s.wavelength();
        values.push_back(space_cf_component(s, r));
    }
    for (const auto &v : values)
        CHECK(std::abs(v - values[0]) <= 1e-12);
}

TEST_CASE("frequency CF is one at zero lag and decays", "[statistics]")
{
    auto s = preset("tap1-highway");
    Eigen::VectorXd dfs(4);
    dfs << 0.0, 1e6, 5e6, 1e7;
    for (Component c : {Component::total, Component::db, Component::sb11})
    {
        auto rho = frequency_cf_values(s, 1, 0.0, c, dfs);
        CHECK_THAT(rho(0).real(), WithinAbs(1.0, 1e-6));
        CHECK(std::abs(rho(1)) <= 1.0 + 1e-6);
        CHECK(std::abs(rho(3)) < std::abs(rho(0)));
    }
    auto curve = frequency_cf(s, 1, 0.0, dfs);
    CHECK(curve.x_unit == "Hz");
}

TEST_CASE("frequency CF of a pure LoS path is a unit phasor", "[statistics]")
{
    auto s = preset("tap1-highway");
    Eigen::VectorXd dfs(3);
    dfs << 0.0, 3e6, 1e7;
    auto rho = frequency_cf_values(s, 1, 0.0, Component::los, dfs);
    for (Eigen::Index i = 0; i < dfs.size(); ++i)
        CHECK_THAT(std::abs(rho(i)), WithinAbs(1.0, 1e-9));
}

TEST_CASE("characteristic function of a constant", "[statistics]")
{
    Eigen::VectorXd omega(3);
    omega << 0.0, 0.5, 2.3;
    auto chi = characteristic_function([](double)
                                       { return std::complex<double>(1.0, 0.0); }, omega);
    CHECK_THAT(chi.values(0).real(), WithinAbs(two_pi, 1e-9));
    for (int i = 1; i < 3; ++i)
        CHECK_THAT(chi.values(i).real(), WithinAbs(2.0 * std::sin(pi * omega(i)) / omega(i), 1e-9));
}

TEST_CASE("sampled characteristic function enforces its sampling limits", "[statistics]")
{
    CurveSeries rho;
    rho.x = Eigen::VectorXd::LinSpaced(201, -pi, pi);
    rho.values = Eigen::VectorXcd::Ones(201);
    Eigen::VectorXd omega(2);
    omega << 0.0, 1.0;
    auto chi = characteristic_function(rho, omega);
    CHECK_THAT(chi.values(0).real(), WithinAbs(two_pi, 1e-9));
    CHECK_THAT(chi.values(1).real(), WithinAbs(2.0 * std::sin(pi), 1e-3));
    Eigen::VectorXd too_fast(1);
    too_fast << 150.0;
    REQUIRE_THROWS_WITH(characteristic_function(rho, too_fast), ContainsSubstring("Nyquist"));
}

TEST_CASE("time transform of a constant", "[statistics]")
{
    Eigen::VectorXd gamma(3);
    gamma << 0.0, 0.1, 0.37;
    auto S = doppler_psd_paper([](double)
                               { return std::complex<double>(1.0, 0.0); }, gamma);
    CHECK_THAT(S.values(0).real(), WithinAbs(two_pi, 1e-9));
    for (int i = 1; i < 3; ++i)
        CHECK_THAT(S.values(i).real(), WithinAbs(std::sin(2.0 * pi * pi * gamma(i)) / (pi * gamma(i)), 1e-9));
}

TEST_CASE("standard Doppler PSD of the isotropic ring is the Clarke spectrum", "[statistics]")
{
    auto s = ring_only(0.0);
    const double fm = 433.0;
    Eigen::VectorXd gamma(4);
    gamma << 0.0, 0.3 * fm, -0.6 * fm, 0.9 * fm;
    auto S = doppler_psd_standard(s, 1, 0.0, gamma, Component::sb12);
    for (Eigen::Index i = 0; i < gamma.size(); ++i)
    {
        double expected = 1.0 / (pi * fm * std::sqrt(1.0 - std::pow(gamma(i) / fm, 2)));
        CHECK_THAT(S.values(i).real(), WithinRel(expected, 0.05));
    }
    StandardPsdOptions bad;
    bad.dtau = 1.0 / fm;
    REQUIRE_THROWS_AS(doppler_psd_standard(s, 1, 0.0, gamma, Component::sb12, PathModel::exact, {}, bad), std::invalid_argument);
}

TEST_CASE("standard Doppler PSD has unit area", "[statistics]")
{
    auto s = preset("tap1-urban");
    const double fm = 144.0;
    Eigen::VectorXd gamma = Eigen::VectorXd::LinSpaced(481, -1.2 * fm, 1.2 * fm);
    auto S = doppler_psd_standard(s, 1, 0.0, gamma);
    double area = S.values.real().sum() * (gamma(1) - gamma(0));
    CHECK_THAT(area, WithinAbs(1.0, 0.02));
}

TEST_CASE("Monte Carlo agrees with quadrature and is thread-count independent", "[statistics]")
{
    auto s = preset("tap1-urban");
    std::vector<LagPoint> lags = {{}, {0.0, 0.0, s.wavelength(), 0.0, 0.0}, {0.0, 0.0, 0.0, s.wavelength(), 1e-3}};
    McOptions o;
    o.realizations = 60;
    o.n_scatterers = 500;
    o.seed = 7;
    o.threads = 1;
    auto one = monte_carlo_cf(s, 1, 2.0, lags, o);
    o.threads = 4;
    auto four = monte_carlo_cf(s, 1, 2.0, lags, o);
    CHECK((one.estimate == four.estimate).all());
    CHECK((one.sigma == four.sigma).all());
    CHECK_THAT(one.estimate(0).real(), WithinAbs(1.0, 1e-12));
    auto quad = space_cf(s, 1, 2.0, Component::total, lags);
    for (std::size_t i = 1; i < lags.size(); ++i)
    {
        INFO("lag " << i << ": mc " << one.estimate(i) << " quad " << quad(i) << " sigma " << one.sigma(i));
        CHECK(std::abs(one.estimate(i) - quad(i)) <= 4.0 * one.sigma(i));
    }
    o.realizations = 5;
    REQUIRE_THROWS_AS(monte_carlo_cf(s, 1, 2.0, lags, o), std::invalid_argument);
}
