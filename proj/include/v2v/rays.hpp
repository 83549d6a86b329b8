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

#ifndef V2V_RAYS_HPP
#define V2V_RAYS_HPP

#include <string>
#include <vector>

#include "v2v/geometry.hpp"
#include "v2v/scenario.hpp"

namespace v2v
{
    enum class PathModel
    {
        exact,                 // Euclidean distances between antenna elements and scatterers
        closed_form,           // Law-of-cosines approximations with the square roots restored
        closed_form_as_printed // As closed_form, but the ellipsoid departure leg uses the printed leading term
    };

    PathModel parse_path_model(const std::string &name); // exact | closed-form | as-printed
    std::string path_model_name(PathModel model);

    // Ray components of a tap. Tap 1 holds los, sb11, sb12, sb13, db and optionally ground;
    // tap l >= 2 holds sbl3, dbl1, dbl2.
    enum class Component
    {
        los,
        sb11,
        sb12,
        sb13,
        db,
        sbl3,
        dbl1,
        dbl2,
        ground,
        total
    };

    // Accepts LoS, SB_1,1, SB_1,2, SB_1,3, DB, SB_l,3 / SB_2,3, DB_l,1, DB_l,2, ground, total
    Component parse_component(const std::string &name);
    std::string component_name(Component c);

    // Components present on tap l, in output order
    std::vector<Component> tap_components(const ValidatedScenario &s, int tap);

    // Share of the tap's power: Omega/(Omega+1) for LoS, eta/(Omega+1) for tap-1 scatter, eta for l >= 2
    double component_weight(const ValidatedScenario &s, int tap, Component c);

    RayClass component_ray_class(Component c);

    // One scatterer as seen by the model at the evaluation time of a RayContext
    struct Bounce
    {
        Population pop = Population::tcyl;
        int tap = 1;
        double alpha = 0.0, beta = 0.0; // Population-frame angles as sampled
        Point3 pos = Point3::Zero();    // Position at the evaluation time (road frame for ground)
        double alpha_R0 = 0.0;          // Arrival azimuth at the MR centre for t = 0 (closed-form input)
        double doppler = 0.0;           // cos(alpha_R - gamma_R) cos(beta_R) at the evaluation time
        double pnl3_centre = 0.0;       // Zero-offset focus distance (ellipsoid only)
    };

    // Leg lengths for arbitrary signed element offsets sT, sR (m) along the array axes at a fixed time
    class RayContext
    {
    public:
        RayContext(const ValidatedScenario &s, double t, PathModel model);

        const ValidatedScenario &scenario() const { return s_; }
        double time() const { return t_; }
        PathModel model() const { return model_; }

        Bounce bounce(Population pop, int tap, double alpha, double beta) const;

        double leg_T(const Bounce &b, double sT) const;                     // MT element -> scatterer
        double leg_R(const Bounce &b, double sR) const;                     // scatterer -> MR element
        double leg_mid(const Bounce &first, const Bounce &second) const;    // scatterer -> scatterer
        double los_length(double sT, double sR) const;
        double los_doppler() const;

    private:
        const ValidatedScenario &s_;
        double t_;
        PathModel model_;
        Point3 axis_T_, axis_R_, mr_centre_;
        double H_t_ = 0.0, H_r_ = 0.0;
    };
}

#endif
