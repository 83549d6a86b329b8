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

#ifndef V2V_GEOMETRY_HPP
#define V2V_GEOMETRY_HPP

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "v2v/scenario.hpp"

namespace v2v
{
    // Frame: origin at the MT cylinder centre, x toward the MR at t = 0, z up.
    // Ground scatterers live in a companion frame with the road at z = 0 and antennas at H_t / H_r.
    template <typename Scalar>
    using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
    using Point3 = Vec3<double>;

    template <typename Scalar>
    Vec3<Scalar> unit_direction(Scalar alpha, Scalar beta)
    {
        using std::cos, std::sin;
        return Vec3<Scalar>(cos(beta) * cos(alpha), cos(beta) * sin(alpha), sin(beta));
    }

    // ULA axis for azimuth psi and elevation theta
    template <typename Scalar>
    Vec3<Scalar> array_axis(Scalar psi, Scalar theta)
    {
        return unit_direction(psi, theta);
    }

    // Signed distance of element `index` (1-based) from the array centre
    template <typename Scalar>
    Scalar element_offset(int M, int index, Scalar delta)
    {
        return (Scalar(index) - Scalar(M + 1) / Scalar(2)) * delta;
    }

    // Distance from the focus at the origin to the ellipsoid centred at (f0, 0, 0) along dir (unit vector)
    template <typename Scalar>
    Scalar ellipsoid_range(Scalar a, Scalar b, Scalar u, Scalar f0, const Vec3<Scalar> &dir)
    {
        using std::sqrt;
        Scalar A = dir.x() * dir.x() / (a * a) + dir.y() * dir.y() / (b * b) + dir.z() * dir.z() / (u * u);
        Scalar h = f0 * dir.x() / (a * a);
        Scalar C = Scalar(1) - f0 * f0 / (a * a); // > 0 for an interior focus
        return (h + sqrt(h * h + A * C)) / A;
    }

    enum class Side
    {
        mt,
        mr
    };

    enum class Population
    {
        tcyl,      // Cylinder around the MT, departure-frame angles
        rcyl,      // Cylinder around the MR, arrival-frame angles, moves with the MR
        ellipsoid, // Semi-ellipsoid of tap l, departure-frame angles from the MT focus
        ground     // Ring on the road around the MR's t = 0 ground projection, arrival-frame azimuth
    };

    std::string population_name(Population p);

    Point3 mr_centre(const ValidatedScenario &s, double t);

    // Element positions (1-based index) of the MT or MR array at time t
    Point3 antenna_position(Side side, int element, const ValidatedScenario &s, double t);

    // Scatterer for population angles (alpha, beta) at time t. Cylinder heights are R tan(beta) with |beta| clamped;
    // ellipsoid elevations are folded to beta >= 0; ground points are in the road frame.
    Point3 scatterer_position(Population pop, int tap, double alpha, double beta, const ValidatedScenario &s, double t);

    // Ground ring radius: specular point of the t = 0 link sits at azimuth pi
    double ground_ring_radius(const ValidatedScenario &s);

    double exact_path_length(const std::vector<Point3> &points);

    struct Angles
    {
        double alpha = 0.0;
        double beta = 0.0;
    };

    // Azimuth/elevation of a point as seen from the MR centre at time t; throws NumericalError at zero range
    Angles arrival_angles(const Point3 &scatterer, const ValidatedScenario &s, double t);
    Angles direction_angles(const Point3 &from, const Point3 &to);

    enum class RayClass
    {
        los,
        sb_tcyl,
        sb_rcyl,
        sb_ellipsoid,
        db_tcyl_rcyl,
        db_tcyl_ellipsoid,
        db_ellipsoid_rcyl,
        sb_ground
    };

    std::string ray_class_name(RayClass c);

    struct PathLengthSet
    {
        RayClass ray_class = RayClass::los;
        std::vector<std::pair<std::string, double>> components; // Named legs, e.g. {"xi_pn11", ...}
        double total = 0.0;
        double t = 0.0;
    };

    // Population angles of the scatterers a ray touches, in the order MT -> MR
    struct RayAngles
    {
        Angles first;
        Angles second;
    };

    // Closed-form legs. sT / sR are signed element offsets along the array axes (m).
    double closed_form_los(const ValidatedScenario &s, double sT, double t);
    double closed_form_pn11(const ValidatedScenario &s, double sT, double alpha_T, double beta_T);
    double closed_form_pn12(const ValidatedScenario &s, double sT, double alpha_R, double t);
    double closed_form_pnl3(const ValidatedScenario &s, int l, double sT, double alpha_T, double beta_T, bool as_printed);
    double closed_form_qn12(const ValidatedScenario &s, double sR, double alpha_R, double beta_R);
    double closed_form_qn11(const ValidatedScenario &s, double sR, double alpha_T, double alpha_R, double t);
    double closed_form_qnl3(const ValidatedScenario &s, double xi_pn, double alpha_T, double beta_T, double alpha_R, double t);
    double closed_form_n11n12(const ValidatedScenario &s, double t);

    // Every leg of one ray from the closed forms (root applied where the printed bracket lacks it).
    // Segments without a closed form (ellipsoid <-> cylinder, ground) use exact geometry.
    PathLengthSet closed_form_lengths(RayClass cls, int tap, int p, int q, const RayAngles &angles,
                                      const ValidatedScenario &s, double t, bool as_printed = false);

    // The same legs from exact 3D geometry
    PathLengthSet exact_lengths(RayClass cls, int tap, int p, int q, const RayAngles &angles,
                                const ValidatedScenario &s, double t);
}

#endif
