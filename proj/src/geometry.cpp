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

#include "v2v/geometry.hpp"

#include <algorithm>
#include <cstdio>

namespace v2v
{
    namespace
    {
        double checked_sqrt(double radicand, const char *what, double x1, double x2, double x3)
        {
            if (!(radicand >= 0.0))
            {
                char buf[256];
                std::snprintf(buf, sizeof(buf), "negative radicand %.6g in %s (inputs: %.6g, %.6g, %.6g)", radicand, what, x1, x2, x3);
                throw NumericalError(buf);
            }
            return std::sqrt(radicand);
        }

        double clamp_cylinder_beta(double beta)
        {
            const double lim = cylinder_elevation_clamp * pi / 2.0;
            return std::clamp(beta, -lim, lim);
        }
    }

    std::string population_name(Population p)
    {
        switch (p)
        {
        case Population::tcyl:
            return "tcyl";
        case Population::rcyl:
            return "rcyl";
        case Population::ellipsoid:
            return "ellipsoid";
        case Population::ground:
            return "ground";
        }
        return "?";
    }

    std::string ray_class_name(RayClass c)
    {
        switch (c)
        {
        case RayClass::los:
            return "LoS";
        case RayClass::sb_tcyl:
            return "SB_Tcyl";
        case RayClass::sb_rcyl:
            return "SB_Rcyl";
        case RayClass::sb_ellipsoid:
            return "SB_ellipsoid";
        case RayClass::db_tcyl_rcyl:
            return "DB_Tcyl-Rcyl";
        case RayClass::db_tcyl_ellipsoid:
            return "DB_Tcyl-ellipsoid";
        case RayClass::db_ellipsoid_rcyl:
            return "DB_ellipsoid-Rcyl";
        case RayClass::sb_ground:
            return "SB_ground";
        }
        return "?";
    }

    Point3 mr_centre(const ValidatedScenario &s, double t)
    {
        const auto &c = s.config();
        double vt = c.v_R * t;
        return Point3(c.D + vt * std::cos(c.gamma_R), vt * std::sin(c.gamma_R), 0.0);
    }

    Point3 antenna_position(Side side, int element, const ValidatedScenario &s, double t)
    {
        const auto &c = s.config();
        if (side == Side::mt)
        {
            if (element < 1 || element > c.M_T)
                throw std::out_of_range("MT element " + std::to_string(element) + " out of range");
            return element_offset(c.M_T, element, c.delta_T) * array_axis(c.psi_T, c.theta_T);
        }
        if (element < 1 || element > c.M_R)
            throw std::out_of_range("MR element " + std::to_string(element) + " out of range");
        return mr_centre(s, t) + element_offset(c.M_R, element, c.delta_R) * array_axis(c.psi_R, c.theta_R);
    }

    double ground_ring_radius(const ValidatedScenario &s)
    {
        const auto &c = s.config();
        double Ht = c.ground ? c.ground->H_t : 0.0, Hr = c.ground ? c.ground->H_r : 0.0;
        if (Ht + Hr <= 0.0)
            return c.D / 2.0;
        return c.D * Hr / (Ht + Hr);
    }

    Point3 scatterer_position(Population pop, int tap, double alpha, double beta, const ValidatedScenario &s, double t)
    {
        const auto &c = s.config();
        switch (pop)
        {
        case Population::tcyl:
        {
            double b = clamp_cylinder_beta(beta);
            return Point3(c.R_t * std::cos(alpha), c.R_t * std::sin(alpha), c.R_t * std::tan(b));
        }
        case Population::rcyl:
        {
            double b = clamp_cylinder_beta(beta);
            return mr_centre(s, t) + Point3(c.R_r * std::cos(alpha), c.R_r * std::sin(alpha), c.R_r * std::tan(b));
        }
        case Population::ellipsoid:
        {
            if (tap < 1 || tap > s.num_taps())
                throw std::out_of_range("ellipsoid tap " + std::to_string(tap) + " out of range");
            Point3 dir = unit_direction(alpha, std::abs(beta));
            return ellipsoid_range(s.a(tap), s.b(tap), s.u(tap), c.f0, dir) * dir;
        }
        case Population::ground:
        {
            double r = ground_ring_radius(s);
            return Point3(c.D + r * std::cos(alpha), r * std::sin(alpha), 0.0);
        }
        }
        return Point3::Zero();
    }

    double exact_path_length(const std::vector<Point3> &points)
    {
        if (points.size() < 2)
            throw std::invalid_argument("exact_path_length needs at least two points");
        double L = 0.0;
        for (size_t i = 1; i < points.size(); ++i)
            L += (points[i] - points[i - 1]).norm();
        return L;
    }

    Angles direction_angles(const Point3 &from, const Point3 &to)
    {
        Point3 d = to - from;
        double r = d.norm();
        if (!(r > 0.0))
            throw NumericalError("direction of a zero-length vector is undefined");
        return {std::atan2(d.y(), d.x()), std::asin(std::clamp(d.z() / r, -1.0, 1.0))};
    }

    Angles arrival_angles(const Point3 &scatterer, const ValidatedScenario &s, double t)
    {
        return direction_angles(mr_centre(s, t), scatterer);
    }

    // ---- closed forms ----------------------------------------------------------------------------

    double closed_form_los(const ValidatedScenario &s, double sT, double t)
    {
        const auto &c = s.config();
        double dTx = sT * std::cos(c.theta_T) * std::cos(c.psi_T);
        double X = c.D - dTx, vt = c.v_R * t;
        return checked_sqrt(X * X + vt * vt - 2.0 * X * vt * std::cos(c.alpha_R_los - c.gamma_R), "xi_pq", X, vt, c.gamma_R);
    }

    double closed_form_pn11(const ValidatedScenario &s, double sT, double alpha_T, double beta_T)
    {
        const auto &c = s.config();
        double ct = std::cos(c.theta_T);
        double dTx = sT * ct * std::cos(c.psi_T), dTy = sT * ct * std::sin(c.psi_T), dTz = sT * std::sin(c.theta_T);
        return c.R_t - (dTx * std::cos(alpha_T) * std::cos(beta_T) + dTy * std::sin(alpha_T) * std::cos(beta_T) + dTz * std::sin(beta_T));
    }

    double closed_form_pn12(const ValidatedScenario &s, double sT, double alpha_R, double t)
    {
        const auto &c = s.config();
        double ct = std::cos(c.theta_T);
        double Qp = sT * ct * (c.R_r / c.D * std::sin(c.psi_T) * std::sin(alpha_R) + std::cos(c.psi_T));
        double X = c.D - Qp * ct, vt = c.v_R * t;
        return checked_sqrt(X * X + vt * vt - 2.0 * X * vt * std::cos(alpha_R - c.gamma_R), "xi_pn12", X, vt, alpha_R);
    }

    double closed_form_pnl3(const ValidatedScenario &s, int l, double sT, double alpha_T, double beta_T, bool as_printed)
    {
        const auto &c = s.config();
        double a = s.a(l), b = s.b(l), u = s.u(l);
        double lead;
        if (as_printed)
        {
            double cb = std::cos(beta_T), sb = std::sin(beta_T), ca = std::cos(alpha_T), sa = std::sin(alpha_T);
            double xi_l3 = b * b * u * u * cb * cb * ca * ca + a * a * u * u * cb * cb * sa * sa + a * a * b * b * sb * sb;
            lead = 2.0 * a * a * b * b * u * u / xi_l3;
        }
        else
            lead = ellipsoid_range(a, b, u, c.f0, unit_direction(alpha_T, std::abs(beta_T)));
        double ct = std::cos(c.theta_T);
        return lead - sT * ct * (c.R_r / c.D * std::sin(c.psi_T) * std::sin(alpha_T) + std::cos(c.psi_T));
    }

    double closed_form_qn12(const ValidatedScenario &s, double sR, double alpha_R, double beta_R)
    {
        const auto &c = s.config();
        double cr = std::cos(c.theta_R);
        double dRx = sR * cr * std::cos(c.psi_R), dRy = sR * cr * std::sin(c.psi_R), dRz = sR * std::sin(c.theta_R);
        return c.R_r - (dRx * std::cos(alpha_R) * std::cos(beta_R) + dRy * std::sin(alpha_R) * std::cos(beta_R) + dRz * std::sin(beta_R));
    }

    double closed_form_qn11(const ValidatedScenario &s, double sR, double alpha_T, double alpha_R, double t)
    {
        const auto &c = s.config();
        double cr = std::cos(c.theta_R);
        double Qq = sR * cr * (c.R_t / c.D * std::sin(c.psi_R) * std::sin(alpha_T) - std::cos(c.psi_R));
        double X = c.D - Qq * cr, vt = c.v_R * t;
        return checked_sqrt(X * X + vt * vt - 2.0 * X * vt * std::cos(alpha_R - c.gamma_R), "xi_qn11", X, vt, alpha_R);
    }

    double closed_form_qnl3(const ValidatedScenario &s, double xi_pn, double alpha_T, double beta_T, double alpha_R, double t)
    {
        const auto &c = s.config();
        double ca = std::cos(alpha_T), cb = std::cos(beta_T), sb = std::sin(beta_T), vt = c.v_R * t;
        double xi_R = checked_sqrt(c.D * c.D + xi_pn * xi_pn * ca * ca - 2.0 * c.D * xi_pn * cb * ca, "xi_R", xi_pn, alpha_T, beta_T);
        double rad = xi_pn * xi_pn * sb * sb + xi_R * xi_R + vt * vt + 2.0 * c.D * xi_R * std::cos(c.gamma_R + alpha_R);
        return checked_sqrt(rad, "xi_qnl3", xi_pn, xi_R, alpha_R);
    }

    double closed_form_n11n12(const ValidatedScenario &s, double t)
    {
        const auto &c = s.config();
        double vt = c.v_R * t;
        return checked_sqrt(c.D * c.D + vt * vt - 2.0 * c.D * vt * std::cos(c.alpha_R_los - c.gamma_R), "xi_n11n12", c.D, vt, c.gamma_R);
    }

    namespace
    {
        PathLengthSet finish(RayClass cls, double t, std::vector<std::pair<std::string, double>> legs)
        {
            PathLengthSet out;
            out.ray_class = cls;
            out.t = t;
            out.components = std::move(legs);
            for (const auto &kv : out.components)
                out.total += kv.second;
            return out;
        }

        int ray_tap(RayClass cls, int tap)
        {
            bool uses_ellipsoid = cls == RayClass::sb_ellipsoid || cls == RayClass::db_tcyl_ellipsoid || cls == RayClass::db_ellipsoid_rcyl;
            return uses_ellipsoid ? tap : 1;
        }
    }

    PathLengthSet closed_form_lengths(RayClass cls, int tap, int p, int q, const RayAngles &ang,
                                      const ValidatedScenario &s, double t, bool as_printed)
    {
        const auto &c = s.config();
        const int l = ray_tap(cls, tap);
        double sT = element_offset(c.M_T, p, c.delta_T), sR = element_offset(c.M_R, q, c.delta_R);
        if (p < 1 || p > c.M_T || q < 1 || q > c.M_R)
            throw std::out_of_range("antenna element index out of range");

        // Arrival azimuth at the MR (t = 0 centre) of a departure-frame scatterer, as the law-of-cosines legs expect
        auto arrival0 = [&](Population pop, const Angles &a)
        {
            return arrival_angles(scatterer_position(pop, l, a.alpha, a.beta, s, 0.0), s, 0.0).alpha;
        };
        auto pnl3 = [&](double off, const Angles &a)
        { return closed_form_pnl3(s, l, off, a.alpha, a.beta, as_printed); };
        auto qnl3 = [&](const Angles &a)
        {
            double xi_pn = pnl3(0.0, a);
            return closed_form_qnl3(s, xi_pn, a.alpha, std::abs(a.beta), arrival0(Population::ellipsoid, a), t);
        };
        auto pos = [&](Population pop, const Angles &a)
        { return scatterer_position(pop, l, a.alpha, a.beta, s, t); };

        switch (cls)
        {
        case RayClass::los:
            return finish(cls, t, {{"xi_pq", closed_form_los(s, sT, t)}});
        case RayClass::sb_tcyl:
            return finish(cls, t, {{"xi_pn11", closed_form_pn11(s, sT, ang.first.alpha, ang.first.beta)},
                                   {"xi_qn11", closed_form_qn11(s, sR, ang.first.alpha, arrival0(Population::tcyl, ang.first), t)}});
        case RayClass::sb_rcyl:
            return finish(cls, t, {{"xi_pn12", closed_form_pn12(s, sT, ang.first.alpha, t)},
                                   {"xi_qn12", closed_form_qn12(s, sR, ang.first.alpha, ang.first.beta)}});
        case RayClass::sb_ellipsoid:
            return finish(cls, t, {{"xi_pnl3", pnl3(sT, ang.first)}, {"xi_qnl3", qnl3(ang.first)}});
        case RayClass::db_tcyl_rcyl:
            return finish(cls, t, {{"xi_pn11", closed_form_pn11(s, sT, ang.first.alpha, ang.first.beta)},
                                   {"xi_n11n12", closed_form_n11n12(s, t)},
                                   {"xi_qn12", closed_form_qn12(s, sR, ang.second.alpha, ang.second.beta)}});
        case RayClass::db_tcyl_ellipsoid:
            return finish(cls, t, {{"xi_pn11", closed_form_pn11(s, sT, ang.first.alpha, ang.first.beta)},
                                   {"xi_n11nl3", (pos(Population::tcyl, ang.first) - pos(Population::ellipsoid, ang.second)).norm()},
                                   {"xi_qnl3", qnl3(ang.second)}});
        case RayClass::db_ellipsoid_rcyl:
            return finish(cls, t, {{"xi_pnl3", pnl3(sT, ang.first)},
                                   {"xi_nl3n12", (pos(Population::ellipsoid, ang.first) - pos(Population::rcyl, ang.second)).norm()},
                                   {"xi_qn12", closed_form_qn12(s, sR, ang.second.alpha, ang.second.beta)}});
        case RayClass::sb_ground:
            return exact_lengths(cls, tap, p, q, ang, s, t);
        }
        return {};
    }

    PathLengthSet exact_lengths(RayClass cls, int tap, int p, int q, const RayAngles &ang,
                                const ValidatedScenario &s, double t)
    {
        const int l = ray_tap(cls, tap);
        Point3 P = antenna_position(Side::mt, p, s, 0.0), Q = antenna_position(Side::mr, q, s, t);
        auto pos = [&](Population pop, const Angles &a)
        { return scatterer_position(pop, l, a.alpha, a.beta, s, t); };
        auto d = [](const Point3 &x, const Point3 &y)
        { return (x - y).norm(); };

        switch (cls)
        {
        case RayClass::los:
            return finish(cls, t, {{"xi_pq", d(P, Q)}});
        case RayClass::sb_tcyl:
        {
            Point3 S = pos(Population::tcyl, ang.first);
            return finish(cls, t, {{"xi_pn11", d(P, S)}, {"xi_qn11", d(S, Q)}});
        }
        case RayClass::sb_rcyl:
        {
            Point3 S = pos(Population::rcyl, ang.first);
            return finish(cls, t, {{"xi_pn12", d(P, S)}, {"xi_qn12", d(S, Q)}});
        }
        case RayClass::sb_ellipsoid:
        {
            Point3 S = pos(Population::ellipsoid, ang.first);
            return finish(cls, t, {{"xi_pnl3", d(P, S)}, {"xi_qnl3", d(S, Q)}});
        }
        case RayClass::db_tcyl_rcyl:
        {
            Point3 S1 = pos(Population::tcyl, ang.first), S2 = pos(Population::rcyl, ang.second);
            return finish(cls, t, {{"xi_pn11", d(P, S1)}, {"xi_n11n12", d(S1, S2)}, {"xi_qn12", d(S2, Q)}});
        }
        case RayClass::db_tcyl_ellipsoid:
        {
            Point3 S1 = pos(Population::tcyl, ang.first), S2 = pos(Population::ellipsoid, ang.second);
            return finish(cls, t, {{"xi_pn11", d(P, S1)}, {"xi_n11nl3", d(S1, S2)}, {"xi_qnl3", d(S2, Q)}});
        }
        case RayClass::db_ellipsoid_rcyl:
        {
            Point3 S1 = pos(Population::ellipsoid, ang.first), S2 = pos(Population::rcyl, ang.second);
            return finish(cls, t, {{"xi_pnl3", d(P, S1)}, {"xi_nl3n12", d(S1, S2)}, {"xi_qn12", d(S2, Q)}});
        }
        case RayClass::sb_ground:
        {
            const auto &c = s.config();
            double Ht = c.ground ? c.ground->H_t : 0.0, Hr = c.ground ? c.ground->H_r : 0.0;
            Point3 S = pos(Population::ground, ang.first);
            return finish(cls, t, {{"xi_png", d(P + Point3(0, 0, Ht), S)}, {"xi_qng", d(S, Q + Point3(0, 0, Hr))}});
        }
        }
        return {};
    }
}
