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

#include "v2v/angular.hpp"
#include "v2v/errors.hpp"
#include "v2v/geometry.hpp"

using namespace v2v;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    ValidatedScenario highway(double gamma_R = 0.0)
    {
        auto c = load_preset("tap2-highway");
        c.gamma_R = gamma_R;
        return validate_scenario(c);
    }

    // Small cylinders so the far-field closed forms apply
    ValidatedScenario small_cylinders(double R)
    {
        auto c = load_preset("tap2-highway");
        c.is_preset = false;
        c.R_t = c.R_r = R;
        return validate_scenario(c);
    }
}

TEST_CASE("MR centre moves along gamma_R", "[geometry]")
{
    auto s = highway(pi / 3.0);
    Point3 c = mr_centre(s, 2.0);
    CHECK_THAT(c.x(), WithinAbs(200.0 + 50.0 * 0.5, 1e-12));
    CHECK_THAT(c.y(), WithinAbs(50.0 * std::sqrt(3.0) / 2.0, 1e-12));
    CHECK(c.z() == 0.0);
}

TEST_CASE("array elements sit symmetrically on the tilted axis", "[geometry]")
{
    auto s = highway();
    const double lambda = s.wavelength();
    Point3 p1 = antenna_position(Side::mt, 1, s, 0.0), p2 = antenna_position(Side::mt, 2, s, 0.0);
    CHECK_THAT((p2 - p1).norm(), WithinAbs(lambda, 1e-15));
    CHECK_THAT(((p1 + p2) / 2.0).norm(), WithinAbs(0.0, 1e-15));
    Point3 axis = (p2 - p1).normalized();
    CHECK_THAT(axis.z(), WithinAbs(std::sin(pi / 3.0), 1e-12));
    CHECK_THAT(axis.x(), WithinAbs(std::cos(pi / 3.0) * std::cos(pi / 3.0), 1e-12));
    Point3 q1 = antenna_position(Side::mr, 1, s, 1.0);
    CHECK_THAT((q1 - mr_centre(s, 1.0)).norm(), WithinAbs(lambda / 2.0, 1e-12));
    REQUIRE_THROWS_AS(antenna_position(Side::mt, 3, s, 0.0), std::out_of_range);
}

TEST_CASE("cylinder scatterers lie on their cylinders", "[geometry]")
{
    auto s = highway(pi / 4.0);
    Point3 t = scatterer_position(Population::tcyl, 1, 0.7, 0.2, s, 0.0);
    CHECK_THAT(std::hypot(t.x(), t.y()), WithinAbs(40.0, 1e-12));
    CHECK_THAT(t.z(), WithinAbs(40.0 * std::tan(0.2), 1e-12));
    Point3 r = scatterer_position(Population::rcyl, 1, 2.0, 0.0, s, 2.0);
    Point3 c = mr_centre(s, 2.0);
    CHECK_THAT(std::hypot(r.x() - c.x(), r.y() - c.y()), WithinAbs(40.0, 1e-12));
    Point3 clamped = scatterer_position(Population::tcyl, 1, 0.0, pi / 2.0, s, 0.0);
    CHECK(std::isfinite(clamped.z()));
    CHECK_THAT(clamped.z(), WithinAbs(40.0 * std::tan(cylinder_elevation_clamp * pi / 2.0), 1e-9));
}

TEST_CASE("ellipsoid scatterers satisfy the focal-sum identity", "[geometry]")
{
    auto s = highway();
    Rng rng(11);
    for (int l = 1; l <= 2; ++l)
    {
        const double a = s.a(l);
        for (int i = 0; i < 10000; ++i)
        {
            double alpha = -pi + two_pi * rng.uniform(), beta = (rng.uniform() - 0.5) * pi;
            Point3 p = scatterer_position(Population::ellipsoid, l, alpha, beta, s, 0.0);
            double sum = p.norm() + (p - Point3(200.0, 0.0, 0.0)).norm();
            REQUIRE(std::abs(sum - 2.0 * a) <= 1e-9 * a);
            REQUIRE(p.z() >= 0.0);
        }
    }
}

TEST_CASE("ellipsoid range matches the quadric", "[geometry]")
{
    const double a = 120.0, b = std::sqrt(120.0 * 120.0 - 100.0 * 100.0), u = 30.0, f0 = 100.0;
    for (double alpha : {0.0, 0.5, 2.0, pi})
    {
        Point3 dir = unit_direction(alpha, 0.3);
        double r = ellipsoid_range(a, b, u, f0, dir);
        Point3 p = r * dir;
        double q = std::pow((p.x() - f0) / a, 2) + std::pow(p.y() / b, 2) + std::pow(p.z() / u, 2);
        CHECK_THAT(q, WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("ground ring passes through the specular point", "[geometry]")
{
    auto c = load_preset("tap1-highway");
    c.ground = GroundConfig{10.0, 20.0, 0.1};
    auto s = validate_scenario(c);
    double rg = ground_ring_radius(s);
    CHECK_THAT(rg, WithinAbs(200.0 * 20.0 / 30.0, 1e-12));
    Point3 g = scatterer_position(Population::ground, 1, pi, 0.0, s, 0.0);
    CHECK(g.z() == 0.0);
    // Equal angles of incidence and reflection
    double tan_in = 10.0 / g.x(), tan_out = 20.0 / (200.0 - g.x());
    CHECK_THAT(tan_in, WithinRel(tan_out, 1e-12));

    c.ground = GroundConfig{0.0, 0.0, 0.1};
    CHECK_THAT(ground_ring_radius(validate_scenario(c)), WithinAbs(100.0, 1e-12));
}

TEST_CASE("exact path length sums the segments", "[geometry]")
{
    std::vector<Point3> pts = {Point3(0, 0, 0), Point3(3, 4, 0), Point3(3, 4, 12)};
    CHECK(exact_path_length(pts) == 17.0);
}

TEST_CASE("angles from the MR centre", "[geometry]")
{
    auto s = highway();
    Angles a = arrival_angles(Point3(0.0, 0.0, 0.0), s, 0.0);
    CHECK_THAT(std::abs(a.alpha), WithinAbs(pi, 1e-15));
    CHECK(a.beta == 0.0);
    Angles b = direction_angles(Point3(0, 0, 0), Point3(1, 1, std::sqrt(2.0)));
    CHECK_THAT(b.alpha, WithinAbs(pi / 4.0, 1e-15));
    CHECK_THAT(b.beta, WithinAbs(pi / 4.0, 1e-15));
    REQUIRE_THROWS_AS(arrival_angles(mr_centre(s, 1.0), s, 1.0), NumericalError);
}

TEST_CASE("closed-form LoS and cylinder legs at zero offset", "[geometry]")
{
    auto s = highway(pi / 3.0);
    CHECK_THAT(closed_form_los(s, 0.0, 0.0), WithinAbs(200.0, 1e-12));
    // Law of cosines with alpha_R^LoS = pi
    double vt = 50.0;
    CHECK_THAT(closed_form_los(s, 0.0, 2.0), WithinAbs(std::sqrt(200.0 * 200.0 + vt * vt + 2.0 * 200.0 * vt * std::cos(pi / 3.0)), 1e-10));
    CHECK_THAT(closed_form_los(s, 0.0, 2.0), WithinRel((mr_centre(s, 2.0)).norm(), 1e-12));
    CHECK(closed_form_pn11(s, 0.0, 1.0, 0.3) == 40.0);
    CHECK(closed_form_qn12(s, 0.0, 1.0, 0.3) == 40.0);
    CHECK_THAT(closed_form_n11n12(s, 0.0), WithinAbs(200.0, 1e-12));
}

TEST_CASE("closed-form element terms are the projection on the array axis", "[geometry]")
{
    auto s = highway();
    const double d = 0.05, alpha = 0.8, beta = 0.1;
    Point3 axis = array_axis(pi / 3.0, pi / 3.0);
    double expected = 40.0 - d * axis.dot(unit_direction(alpha, beta));
    CHECK_THAT(closed_form_pn11(s, d, alpha, beta), WithinAbs(expected, 1e-12));
}

TEST_CASE("closed-form ellipsoid leading term equals the exact focus range", "[geometry]")
{
    auto s = highway();
    for (double alpha : {0.3, 1.5, 2.8})
    {
        Point3 p = scatterer_position(Population::ellipsoid, 1, alpha, 0.2, s, 0.0);
        CHECK_THAT(closed_form_pnl3(s, 1, 0.0, alpha, 0.2, false), WithinRel(p.norm(), 1e-12));
    }
}

TEST_CASE("closed forms converge to exact geometry for small cylinders", "[geometry]")
{
    auto s = small_cylinders(1.0);
    Rng rng(3);
    const RayClass classes[] = {RayClass::los, RayClass::sb_tcyl, RayClass::sb_rcyl, RayClass::db_tcyl_rcyl};
    double worst = 0.0;
    for (RayClass cls : classes)
        for (int i = 0; i < 2000; ++i)
        {
            RayAngles ang{{-pi + two_pi * rng.uniform(), 0.2 * (rng.uniform() - 0.5)},
                          {-pi + two_pi * rng.uniform(), 0.2 * (rng.uniform() - 0.5)}};
            int p = 1 + static_cast<int>(rng.below(2)), q = 1 + static_cast<int>(rng.below(2));
            double exact = exact_lengths(cls, 1, p, q, ang, s, 0.0).total;
            double closed = closed_form_lengths(cls, 1, p, q, ang, s, 0.0).total;
            worst = std::max(worst, std::abs(closed - exact) / exact);
        }
    INFO("worst relative error " << worst);
    CHECK(worst < 0.011);
}

TEST_CASE("moving-MR closed forms hold for scatterers behind the MR", "[geometry]")
{
    auto s = small_cylinders(1.0);
    RayAngles ang{{pi, 0.0}, {}};
    double exact = exact_lengths(RayClass::sb_rcyl, 1, 1, 1, ang, s, 2.0).total;
    double closed = closed_form_lengths(RayClass::sb_rcyl, 1, 1, 1, ang, s, 2.0).total;
    CHECK(std::abs(closed - exact) / exact < 0.005);
    // The time term uses the scatterer azimuth, so a scatterer ahead of the MR is placed behind it
    RayAngles ahead{{0.0, 0.0}, {}};
    double exact_ahead = exact_lengths(RayClass::sb_rcyl, 1, 1, 1, ahead, s, 2.0).total;
    double closed_ahead = closed_form_lengths(RayClass::sb_rcyl, 1, 1, 1, ahead, s, 2.0).total;
    CHECK_THAT(closed_ahead, WithinAbs(150.0 + 1.0, 0.1));
    CHECK_THAT(exact_ahead, WithinAbs(250.0 + 2.0, 0.1));
}

TEST_CASE("closed-form error grows with the cylinder radius", "[geometry]")
{
    auto err = [](double R)
    {
        auto c = load_preset("tap1-highway");
        c.R_t = c.R_r = R;
        auto s = validate_scenario(c);
        RayAngles ang{{pi / 2.0, 0.0}, {0.0, 0.0}};
        double exact = exact_lengths(RayClass::sb_tcyl, 1, 1, 1, ang, s, 0.0).total;
        return std::abs(closed_form_lengths(RayClass::sb_tcyl, 1, 1, 1, ang, s, 0.0).total - exact);
    };
    CHECK(err(2.0) < err(10.0));
    CHECK(err(10.0) < err(40.0));
}

TEST_CASE("path length sets name their legs", "[geometry]")
{
    auto s = highway();
    RayAngles ang{{0.5, 0.1}, {2.0, -0.1}};
    auto set = exact_lengths(RayClass::db_tcyl_rcyl, 1, 1, 2, ang, s, 1.0);
    REQUIRE(set.components.size() == 3);
    CHECK(set.components[0].first == "xi_pn11");
    CHECK(set.components[1].first == "xi_n11n12");
    CHECK(set.components[2].first == "xi_qn12");
    double sum = 0.0;
    for (const auto &kv : set.components)
        sum += kv.second;
    CHECK_THAT(set.total, WithinAbs(sum, 1e-12));
    Point3 P = antenna_position(Side::mt, 1, s, 1.0), Q = antenna_position(Side::mr, 2, s, 1.0);
    Point3 A = scatterer_position(Population::tcyl, 1, 0.5, 0.1, s, 1.0), B = scatterer_position(Population::rcyl, 1, 2.0, -0.1, s, 1.0);
    CHECK_THAT(set.total, WithinAbs(exact_path_length({P, A, B, Q}), 1e-9));
}

TEST_CASE("single-bounce ellipsoid path length is 2a for the centre elements", "[geometry]")
{
    auto c = load_preset("tap2-highway");
    c.M_T = c.M_R = 1;
    auto s = validate_scenario(c);
    RayAngles ang{{1.1, 0.4}, {}};
    CHECK_THAT(exact_lengths(RayClass::sb_ellipsoid, 2, 1, 1, ang, s, 0.0).total, WithinAbs(280.0, 1e-9));
}
